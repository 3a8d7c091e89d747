#ifndef BRENKE_HPP
#define BRENKE_HPP

#include <brenke/bounds.hpp>
#include <brenke/cli.hpp>
#include <brenke/config.hpp>
#include <brenke/errors.hpp>
#include <brenke/families.hpp>
#include <brenke/moments.hpp>
#include <brenke/operator.hpp>
#include <brenke/poisson.hpp>
#include <brenke/series.hpp>
#include <brenke/smoothness.hpp>
#include <brenke/test_functions.hpp>

#endif
