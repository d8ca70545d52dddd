#pragma once

#include "prn/algebra.hpp"
#include "prn/cli.hpp"
#include "prn/digraph.hpp"
#include "prn/document.hpp"
#include "prn/dot.hpp"
#include "prn/errors.hpp"
#include "prn/linear.hpp"
#include "prn/matrix.hpp"
#include "prn/morphism.hpp"
#include "prn/network.hpp"
#include "prn/rational.hpp"
#include "prn/state.hpp"
#include "prn/steady.hpp"
#include "prn/structure.hpp"
