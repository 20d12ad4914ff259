#pragma once

#include "chevgrade/algebra_element.hpp"
#include "chevgrade/analytic/curvature.hpp"
#include "chevgrade/analytic/polynomial.hpp"
#include "chevgrade/analytic/rational_map.hpp"
#include "chevgrade/analytic/samplers.hpp"
#include "chevgrade/analytic/schwarzian.hpp"
#include "chevgrade/chevalley.hpp"
#include "chevgrade/cominiscule.hpp"
#include "chevgrade/error.hpp"
#include "chevgrade/exact.hpp"
#include "chevgrade/io.hpp"
#include "chevgrade/matrix.hpp"
#include "chevgrade/root_system.hpp"
#include "chevgrade/sparse_linear.hpp"
#include "chevgrade/tensor.hpp"
#include "chevgrade/tensor_ops.hpp"
#include "chevgrade/verify.hpp"
