"""
Producing CSV tables from the command line
==========================================

The ``chebdecay`` command (also ``python -m chebdecay``) writes every result
as CSV.  Here it is driven in-process through :func:`chebdecay.cli.main`;
the same argument lists work in a shell.
"""
from __future__ import annotations

from chebdecay.cli import main

#%%
# Both variation functionals of the built-in example.
main(["variation", "--k", "1", "--kind", "both"])

#%%
# Reference coefficients next to both decay bounds, the data behind a
# decay plot.
main(["figure1", "--panel", "a", "--j-max", "8"])

#%%
# Error bounds for ``n = 200`` and ``d = 200 - l``.
main(["figure1", "--panel", "b"])

#%%
# Any function can be given inline or from a file.  A rejected input
# returns status 2 and writes nothing to stdout.
main(["approx", "--function", "on [0,2]: piece [0,1): (t-1)^2; piece [1,2]: sin(t-1); k=1", "--pairs", "10:12,20:12"])
status = main(["coeffs", "--function", "on [1,-1]: t; k=0"])
print("status:", status)
