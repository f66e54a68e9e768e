#ifndef RELAYSIM_RELAYSIM_HPP
#define RELAYSIM_RELAYSIM_HPP

#include "relaysim/channel.hpp"
#include "relaysim/config.hpp"
#include "relaysim/effective_snr.hpp"
#include "relaysim/energy.hpp"
#include "relaysim/mc.hpp"
#include "relaysim/rate.hpp"
#include "relaysim/sampler.hpp"
#include "relaysim/sweep.hpp"

#endif  // RELAYSIM_RELAYSIM_HPP
