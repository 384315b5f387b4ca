"""stability_lab: almost-representations of finitely presented groups,
winding-number obstructions, and far-from-any-representation certificates.

The short version of the pipeline::

    from stability_lab import zoo, winding

    con = zoo.wallpaper_p2(13)
    report = winding.certify_obstruction(con.test_relators[0], con.unitaries)
    assert report.verdict == "certified_far"

See the demos/ directory of the repository for narrative walkthroughs.
"""

from . import crystal, induce, linalg, relators, winding, zoo  # noqa: F401
from .errors import StabilityLabError  # noqa: F401

__version__ = "0.1.0"
