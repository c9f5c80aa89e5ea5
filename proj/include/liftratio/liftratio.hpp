#pragma once

#include "liftratio/arborescence.hpp"
#include "liftratio/cover.hpp"
#include "liftratio/errors.hpp"
#include "liftratio/expectation.hpp"
#include "liftratio/graph.hpp"
#include "liftratio/graph_io.hpp"
#include "liftratio/matrix.hpp"
#include "liftratio/poly.hpp"
#include "liftratio/rational.hpp"
