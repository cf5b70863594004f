#pragma once

#include "onion/classify.hpp"
#include "onion/error.hpp"
#include "onion/hyperdet.hpp"
#include "onion/matrix.hpp"
#include "onion/mixed.hpp"
#include "onion/oracle.hpp"
#include "onion/quadratic_extension.hpp"
#include "onion/scalar.hpp"
#include "onion/singular.hpp"
#include "onion/tensor.hpp"
