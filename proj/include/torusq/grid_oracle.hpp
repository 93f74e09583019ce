#pragma once

#include "torusq/trigpoly.hpp"
#include "torusq/zakspace.hpp"

// Reference operators acting directly on sampled sections. They share no code
// with the Hermite matrix assembly and serve as its independent check.
namespace torusq::oracle {

/// Q_N(f)φ = (1/2πiN)(f_x(∂_y − 2πiNx) − f_y ∂_x)φ + fφ, pointwise on the grid.
GridSection apply_prequantum(const TrigPoly& f, const GridSection& phi);

/// X̂φ = (1/2πi)(∂_y − 2πiNx)φ.
GridSection apply_heisenberg_x(const GridSection& phi);

/// Ŷφ = −(1/2πi)∂_xφ.
GridSection apply_heisenberg_y(const GridSection& phi);

}  // namespace torusq::oracle
