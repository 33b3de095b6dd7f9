#pragma once

// Umbrella header for the rumor-spreading simulation library.

#include "rumor/broadcast.hpp"
#include "rumor/constants.hpp"
#include "rumor/degree_sequence.hpp"
#include "rumor/drp.hpp"
#include "rumor/errors.hpp"
#include "rumor/harness.hpp"
#include "rumor/json_io.hpp"
#include "rumor/multigraph.hpp"
#include "rumor/rng.hpp"
#include "rumor/short_path.hpp"
#include "rumor/stub_space.hpp"
#include "rumor/tree_process.hpp"
