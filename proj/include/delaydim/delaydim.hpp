// Umbrella header.
#pragma once

#include "classical.hpp"
#include "dilation.hpp"
#include "error.hpp"
#include "experiment.hpp"
#include "json_io.hpp"
#include "linalg.hpp"
#include "quantum.hpp"
#include "realization.hpp"
#include "rng.hpp"
#include "sequence_io.hpp"
#include "sequences.hpp"
#include "spectral.hpp"
