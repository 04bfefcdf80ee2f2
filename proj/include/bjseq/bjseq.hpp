#pragma once

// Umbrella header.

#include "campaign.hpp"
#include "classify.hpp"
#include "dual.hpp"
#include "hull.hpp"
#include "io.hpp"
#include "isometry.hpp"
#include "norm.hpp"
#include "oracle.hpp"
#include "orth.hpp"
#include "sampling.hpp"
#include "scalar.hpp"
#include "seqrep.hpp"
