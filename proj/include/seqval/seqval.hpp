#pragma once

#include "board.hpp"
#include "corpus.hpp"
#include "experiments.hpp"
#include "featurebank.hpp"
#include "model_io.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "transform.hpp"
#include "valuation.hpp"
