#pragma once

// Umbrella header for the word-sense disambiguation toolkit.

#include "wsd/config_spec.hpp"
#include "wsd/corpus.hpp"
#include "wsd/evaluation.hpp"
#include "wsd/exemplar.hpp"
#include "wsd/features.hpp"
#include "wsd/naive_bayes.hpp"
#include "wsd/report.hpp"
#include "wsd/synthetic.hpp"
