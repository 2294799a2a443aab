#pragma once

// Umbrella header.

#include "macfaces/channel.hpp"
#include "macfaces/counting.hpp"
#include "macfaces/errors.hpp"
#include "macfaces/json_io.hpp"
#include "macfaces/label.hpp"
#include "macfaces/membership.hpp"
#include "macfaces/oracle.hpp"
#include "macfaces/region.hpp"
#include "macfaces/subset.hpp"
