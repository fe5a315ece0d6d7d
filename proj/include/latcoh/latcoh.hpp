#ifndef LATCOH_LATCOH_HPP
#define LATCOH_LATCOH_HPP

// Umbrella header.
#include <latcoh/analysis.hpp>
#include <latcoh/corpus.hpp>
#include <latcoh/cubical.hpp>
#include <latcoh/curve.hpp>
#include <latcoh/error.hpp>
#include <latcoh/io.hpp>
#include <latcoh/lattice.hpp>
#include <latcoh/lattice_cohomology.hpp>
#include <latcoh/parallel.hpp>
#include <latcoh/properties.hpp>
#include <latcoh/semigroup.hpp>
#include <latcoh/smith.hpp>
#include <latcoh/suites.hpp>
#include <latcoh/value_grid.hpp>

#endif
