#pragma once

// Umbrella header: the whole library in one include.

#include "healthadvisor/concept_graph.hpp"
#include "healthadvisor/csv.hpp"
#include "healthadvisor/dataset.hpp"
#include "healthadvisor/decision_tree.hpp"
#include "healthadvisor/entropy.hpp"
#include "healthadvisor/errors.hpp"
#include "healthadvisor/metrics.hpp"
#include "healthadvisor/oner.hpp"
#include "healthadvisor/pipeline.hpp"
#include "healthadvisor/synthetic.hpp"
#include "healthadvisor/text.hpp"
#include "healthadvisor/wearable_catalog.hpp"
