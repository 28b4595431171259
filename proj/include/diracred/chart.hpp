#pragma once

#include "diracred/chart/forms.hpp"
#include "diracred/chart/polynomial.hpp"
#include "diracred/chart/sections.hpp"
