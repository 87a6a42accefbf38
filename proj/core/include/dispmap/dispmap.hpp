#pragma once

#include <dispmap/config.hpp>
#include <dispmap/csv.hpp>
#include <dispmap/effective.hpp>
#include <dispmap/eigenstates.hpp>
#include <dispmap/error.hpp>
#include <dispmap/liouville.hpp>
#include <dispmap/model.hpp>
#include <dispmap/parallel.hpp>
#include <dispmap/response.hpp>
#include <dispmap/spectra.hpp>
#include <dispmap/transient.hpp>
#include <dispmap/units.hpp>
