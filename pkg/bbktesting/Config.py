# Copyright 2018 British Broadcasting Corporation
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os

# Bulk-Boundary Testing Configuration File
# ----------------------------------------
# Every value below is a per-run budget or convention. The command line flags of 'bbk-test.py verify' write through
# to the matching values, so suites only ever read this module.

# Maximum polynomial degree N of the interval model. 0-forms have degree <= N, 1-forms t^j dt have j <= N-1.
# Products leaving the cap raise a BudgetException rather than being projected away.
POLY_DEGREE_CAP = 2

# Sym-truncation T used for observable complexes
SYM_TRUNCATION = 3

# Sym-truncation and polynomial-degree cap used by the exhaustive Weiss cover enumeration
WEISS_SYM_TRUNCATION = 2
WEISS_POLY_DEGREE_CAP = 1

# Largest Jacobi identity arity (2m - 1 for brackets of arity m) that a check may expand
ARITY_BUDGET = 3

# Largest B-weight (symmetric degree of the coefficients) used by the local functional computations
WEIGHT_CAP = 2

# Orientation sign of the boundary pairing in the boundary defect identity.
# <l1 e1, e2> + (-1)^|e1| <e1, l1 e2> = BOUNDARY_ORIENTATION * <rho e1, rho e2>_boundary
BOUNDARY_ORIENTATION = -1

# Exponent k of the cutoff chi(t) = (1 - t/delta)^k used by the boundary splitting
CUTOFF_EXPONENT = 1

# Breakpoints of the default cell mesh used by the Lagrangian and pullback suites
MESH_BREAKPOINTS = ["0", "1/3", "2/3", "1"]

# Breakpoints of the mesh used by the observable comparison and P0 suites
FACTORIZATION_MESH_BREAKPOINTS = ["0", "1/2", "1"]

# Set a RANDOM_SEED to an integer value to make testing deterministic and repeatable.
RANDOM_SEED = 100

# Number of randomized field pairs used by the boundary defect check
RANDOMIZED_CASES = 100

# Number of randomized forms, and the largest polynomial cap, used by the contracting homotopy check
HOMOTOPY_CASES = 200
HOMOTOPY_MAX_CAP = 8

# Number of kernels in the generator pool used by the P0 checks
P0_POOL_SIZE = 6

# Number of checks within a suite which may run concurrently
MAX_THREADS = max(1, int(os.environ.get("BBK_THREADS", "1")))

# Version stamped into JSON reports
REPORT_VERSION = "1.0"

try:
    from . import UserConfig  # noqa: F401
except ImportError:
    pass
