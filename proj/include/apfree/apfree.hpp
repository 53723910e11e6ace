#pragma once

#include "apfree/bitset.hpp"
#include "apfree/bounds.hpp"
#include "apfree/constructions.hpp"
#include "apfree/error.hpp"
#include "apfree/extremal_tables.hpp"
#include "apfree/group.hpp"
#include "apfree/heuristic_search.hpp"
#include "apfree/ip_bound.hpp"
#include "apfree/lines.hpp"
#include "apfree/star_system.hpp"
