#pragma once

// Umbrella header: national research-field strength assessment from
// highly-cited-article top-scientist incidence, plus the synthetic-corpus
// machinery that makes the whole pipeline verifiable end to end.

#include "fieldrank/analytics.hpp"
#include "fieldrank/bias.hpp"
#include "fieldrank/csv.hpp"
#include "fieldrank/disambig.hpp"
#include "fieldrank/errors.hpp"
#include "fieldrank/hca.hpp"
#include "fieldrank/io.hpp"
#include "fieldrank/pipeline.hpp"
#include "fieldrank/reports.hpp"
#include "fieldrank/rng.hpp"
#include "fieldrank/scoring.hpp"
#include "fieldrank/spearman.hpp"
#include "fieldrank/summary.hpp"
#include "fieldrank/synth.hpp"
#include "fieldrank/synth_config.hpp"
#include "fieldrank/text.hpp"
#include "fieldrank/types.hpp"
