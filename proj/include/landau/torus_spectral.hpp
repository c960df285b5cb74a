// torus_spectral.hpp: the magnetic Laplacian on a flat torus and everything built on its level spaces

#pragma once

#include "fit.hpp"
#include "torus/eigensolver.hpp"
#include "torus/geometry.hpp"
#include "torus/kernel.hpp"
#include "torus/spectral.hpp"
#include "torus/toeplitz.hpp"
#include "torus/trig_poly.hpp"
