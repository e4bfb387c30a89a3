#pragma once

#include "binavg/binomial.hpp"
#include "binavg/convolution.hpp"
#include "binavg/errors.hpp"
#include "binavg/identities.hpp"
#include "binavg/limit.hpp"
#include "binavg/numeric.hpp"
#include "binavg/sequence.hpp"
#include "binavg/weight_profile.hpp"
#include "binavg/weighted.hpp"
