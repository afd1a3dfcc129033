#pragma once

// Umbrella header: weighted empirical-likelihood inference for predictive
// regressions, the least-squares/bootstrap baseline, and the Monte Carlo
// harness. Each header is also independently includable.

#include "predel/bootstrap.hpp"
#include "predel/chi_square.hpp"
#include "predel/confidence.hpp"
#include "predel/csv.hpp"
#include "predel/dgp.hpp"
#include "predel/el.hpp"
#include "predel/errors.hpp"
#include "predel/experiment.hpp"
#include "predel/lse.hpp"
#include "predel/parallel.hpp"
#include "predel/rng.hpp"
#include "predel/sample.hpp"
#include "predel/weights.hpp"
