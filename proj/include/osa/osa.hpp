#ifndef OSA_OSA_HPP
#define OSA_OSA_HPP

// Subspace approximation with outliers: weak coresets by adaptive residual
// sampling, with M-estimator and affine variants, planted-instance
// generation, and a brute-force verification oracle.

#include "osa/affine.hpp"
#include "osa/common.hpp"
#include "osa/datagen.hpp"
#include "osa/diagnostics.hpp"
#include "osa/geometry.hpp"
#include "osa/io.hpp"
#include "osa/mestimators.hpp"
#include "osa/oracle.hpp"
#include "osa/sampling.hpp"
#include "osa/solver.hpp"
#include "osa/version.hpp"

#endif  // OSA_OSA_HPP
