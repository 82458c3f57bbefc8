/*
Copyright 2026 qdopt developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "qdopt/baselines.hpp"
#include "qdopt/brute_force.hpp"
#include "qdopt/bsb.hpp"
#include "qdopt/dataset.hpp"
#include "qdopt/errors.hpp"
#include "qdopt/factor_model.hpp"
#include "qdopt/io.hpp"
#include "qdopt/matrix.hpp"
#include "qdopt/oracle.hpp"
#include "qdopt/pipeline.hpp"
#include "qdopt/problem.hpp"
#include "qdopt/rbm.hpp"
#include "qdopt/relaxation.hpp"
#include "qdopt/rng.hpp"
