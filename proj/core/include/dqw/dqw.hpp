#pragma once

#include "dqw/coin.hpp"
#include "dqw/config.hpp"
#include "dqw/distribution.hpp"
#include "dqw/engine.hpp"
#include "dqw/ensembles.hpp"
#include "dqw/errors.hpp"
#include "dqw/io.hpp"
#include "dqw/path_sum.hpp"
#include "dqw/random.hpp"
#include "dqw/state.hpp"
#include "dqw/stats.hpp"
