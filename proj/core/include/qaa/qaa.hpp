#pragma once

// Umbrella header.

#include "qaa/amplifier.hpp"
#include "qaa/circuit.hpp"
#include "qaa/derand.hpp"
#include "qaa/distinguish.hpp"
#include "qaa/errors.hpp"
#include "qaa/grover.hpp"
#include "qaa/io.hpp"
#include "qaa/linalg.hpp"
#include "qaa/state.hpp"
#include "qaa/system.hpp"
#include "qaa/uniform.hpp"
#include "qaa/unitary.hpp"
#include "qaa/validate.hpp"
