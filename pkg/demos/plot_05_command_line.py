"""
Reproducing the figure data from the command line
=================================================

Each experiment writes a CSV table with a '#'-prefixed metadata block.
The same runs are available from a shell as ``eprgates fig3`` and so on.
"""

import io
from contextlib import redirect_stdout

from eprgates.cli import main

buf = io.StringIO()
with redirect_stdout(buf):
    main(["angles", "--sweep", "-2:-6:3"])
print(buf.getvalue())

buf = io.StringIO()
with redirect_stdout(buf):
    main(["fig5", "--sweep", "0:180:5"])
print(buf.getvalue())
