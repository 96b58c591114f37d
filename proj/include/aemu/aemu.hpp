#pragma once

// Convenience include for the whole library.

#include "aemu/circuit.hpp"
#include "aemu/csv.hpp"
#include "aemu/evolve.hpp"
#include "aemu/ising.hpp"
#include "aemu/kraus.hpp"
#include "aemu/lindblad.hpp"
#include "aemu/metrics.hpp"
#include "aemu/noisy_circuit.hpp"
#include "aemu/programming_error.hpp"
#include "aemu/report.hpp"
#include "aemu/rng.hpp"
#include "aemu/runtime.hpp"
#include "aemu/schedule.hpp"
#include "aemu/search.hpp"
#include "aemu/segments.hpp"
#include "aemu/svg.hpp"
#include "aemu/svmc.hpp"
#include "aemu/trotter_bound.hpp"
#include "aemu/types.hpp"
