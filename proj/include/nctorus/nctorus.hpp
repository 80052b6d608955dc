/* Copyright 2026 The nctorus Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

#pragma once

#include "nctorus/error.hpp"
#include "nctorus/phase.hpp"
#include "nctorus/lattice.hpp"
#include "nctorus/torus.hpp"
#include "nctorus/derivation.hpp"
#include "nctorus/higher_torus.hpp"
#include "nctorus/matrep.hpp"
#include "nctorus/circle.hpp"
#include "nctorus/fft.hpp"
#include "nctorus/grid.hpp"
#include "nctorus/heisenberg.hpp"
#include "nctorus/inner_solver.hpp"
#include "nctorus/twisted.hpp"
#include "nctorus/poly_symbol.hpp"
#include "nctorus/moyal.hpp"
#include "nctorus/bridge.hpp"
#include "nctorus/gns.hpp"
