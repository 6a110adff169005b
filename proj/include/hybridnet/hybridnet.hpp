#pragma once

#include "hybridnet/band.hpp"
#include "hybridnet/csv.hpp"
#include "hybridnet/harness.hpp"
#include "hybridnet/network.hpp"
#include "hybridnet/policy.hpp"
#include "hybridnet/propagation.hpp"
#include "hybridnet/regulatory.hpp"
#include "hybridnet/scenario.hpp"
#include "hybridnet/seeding.hpp"
#include "hybridnet/transceiver.hpp"
#include "hybridnet/units.hpp"
