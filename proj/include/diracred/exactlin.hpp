#pragma once

#include "diracred/errors.hpp"
#include "diracred/exactlin/matrix.hpp"
#include "diracred/exactlin/random.hpp"
#include "diracred/exactlin/scalar.hpp"
#include "diracred/exactlin/subspace.hpp"
