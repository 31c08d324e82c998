#pragma once

#include "invgamma/errors.hpp"
#include "invgamma/specfun.hpp"
#include "invgamma/critical_points.hpp"
#include "invgamma/real_inverse.hpp"
#include "invgamma/complex_inverse.hpp"
#include "invgamma/geometry.hpp"
#include "invgamma/contour_atlas.hpp"
#include "invgamma/expr.hpp"
