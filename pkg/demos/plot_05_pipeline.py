"""
The whole pipeline
==================

Build, color, refine, collapse and certify in one call, then print the
deterministic report.
"""

from twotorsion import TwoGroup, run_pipeline
from twotorsion.pipeline import render_report

res = run_pipeline(3, TwoGroup((2, 1)), seed=7)
print(render_report(res.sections))
print("certified:", res.certified)
