#pragma once

// Umbrella header for the whole toolkit.

#include "gammadil/config.hpp"
#include "gammadil/dilation.hpp"
#include "gammadil/eig.hpp"
#include "gammadil/errors.hpp"
#include "gammadil/gamma.hpp"
#include "gammadil/hardy.hpp"
#include "gammadil/matrix.hpp"
#include "gammadil/radius.hpp"
#include "gammadil/random.hpp"
#include "gammadil/report.hpp"
#include "gammadil/serialize.hpp"
