#pragma once

#include "tensor_core.hpp"
#include "rng.hpp"
#include "subspaces.hpp"
#include "prodvec_families.hpp"
#include "witness.hpp"
#include "paper_examples.hpp"
#include "json_io.hpp"
