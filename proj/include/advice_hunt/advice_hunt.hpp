#pragma once

#include "advice_hunt/agent.hpp"
#include "advice_hunt/analysis.hpp"
#include "advice_hunt/bitcodec.hpp"
#include "advice_hunt/bounds.hpp"
#include "advice_hunt/generators.hpp"
#include "advice_hunt/graph.hpp"
#include "advice_hunt/graph_io.hpp"
#include "advice_hunt/oracle.hpp"
#include "advice_hunt/random.hpp"
#include "advice_hunt/rational.hpp"
#include "advice_hunt/rendezvous.hpp"
