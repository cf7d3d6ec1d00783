#pragma once

#include "subfpt/config.hpp"
#include "subfpt/cox_renewal.hpp"
#include "subfpt/error.hpp"
#include "subfpt/fractional.hpp"
#include "subfpt/models.hpp"
#include "subfpt/montecarlo.hpp"
#include "subfpt/rng.hpp"
#include "subfpt/sampler.hpp"
#include "subfpt/selftest.hpp"
#include "subfpt/special.hpp"
#include "subfpt/spectrally_negative.hpp"
#include "subfpt/wiener_hopf.hpp"
