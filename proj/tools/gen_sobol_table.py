#!/usr/bin/env python3
"""Emit src/sobol_directions.cpp from the new-joe-kuo-6.21201 table bundled with scipy."""
import os
import sys

import numpy as np
import scipy

DIMS = 128

path = os.path.join(os.path.dirname(scipy.__file__), "stats", "_sobol_direction_numbers.npz")
table = np.load(path)
poly = table["poly"][:DIMS]
vinit = table["vinit"][:DIMS]

out = sys.stdout
out.write("// Generated by tools/gen_sobol_table.py from new-joe-kuo-6.21201. Do not edit.\n\n")
out.write('#include "rqmcpg/lowdisc.hpp"\n\nnamespace rqmcpg::detail {\n\n')
out.write(f"const std::array<SobolDirection, {DIMS}> kSobolDirections = {{{{\n")
for p, m in zip(poly, vinit):
    degree = int(p).bit_length() - 1
    ms = ", ".join(str(int(x)) for x in m[:max(degree, 1)])
    out.write(f"    {{{int(p)}u, {degree}u, {{{ms}}}}},\n")
out.write("}};\n\n}  // namespace rqmcpg::detail\n")
