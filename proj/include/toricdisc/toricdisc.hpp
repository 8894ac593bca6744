#pragma once

#include "coeff.hpp"
#include "determinant.hpp"
#include "discriminant.hpp"
#include "gcd.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "modp.hpp"
#include "resultant.hpp"
#include "workbench.hpp"
