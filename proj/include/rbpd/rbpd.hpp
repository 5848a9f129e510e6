#pragma once
// Umbrella header.

#include "rbpd/adversarial.hpp"
#include "rbpd/bkb_builder.hpp"
#include "rbpd/brand.hpp"
#include "rbpd/config.hpp"
#include "rbpd/crp.hpp"
#include "rbpd/detector.hpp"
#include "rbpd/eval.hpp"
#include "rbpd/extractors.hpp"
#include "rbpd/html.hpp"
#include "rbpd/kg.hpp"
#include "rbpd/llm.hpp"
#include "rbpd/phash.hpp"
#include "rbpd/prompt.hpp"
#include "rbpd/providers.hpp"
#include "rbpd/psl.hpp"
#include "rbpd/ranking.hpp"
#include "rbpd/summary.hpp"
#include "rbpd/webpage.hpp"
