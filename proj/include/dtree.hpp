#pragma once

#include "dtree/rational.hpp"
#include "dtree/multiindex.hpp"
#include "dtree/config.hpp"
#include "dtree/lincomb.hpp"
#include "dtree/tree.hpp"
#include "dtree/enumerate.hpp"
#include "dtree/grafting.hpp"
#include "dtree/guin_oudom.hpp"
#include "dtree/plugging.hpp"
#include "dtree/coproducts.hpp"
#include "dtree/applications.hpp"
#include "dtree/io.hpp"
#include "dtree/checks.hpp"
