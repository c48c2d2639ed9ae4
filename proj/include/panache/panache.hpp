#pragma once

#include "panache/autodual.hpp"
#include "panache/blend.hpp"
#include "panache/checks.hpp"
#include "panache/ext.hpp"
#include "panache/io.hpp"
#include "panache/monodromy.hpp"
#include "panache/samples.hpp"
