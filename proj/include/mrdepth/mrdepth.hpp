#pragma once

#include "mrdepth/dataset.hpp"
#include "mrdepth/depth.hpp"
#include "mrdepth/depth_field.hpp"
#include "mrdepth/enclosing_ball.hpp"
#include "mrdepth/error.hpp"
#include "mrdepth/geometry.hpp"
#include "mrdepth/harness.hpp"
#include "mrdepth/radial_core.hpp"
#include "mrdepth/random.hpp"
#include "mrdepth/rank_correlation.hpp"
#include "mrdepth/scenario.hpp"
