"""
agreement-forge
===============
**agreement-forge** completes sketches of agreement-based distributed protocol
processes (leader election, consensus rounds, broadcasts) so that the completed
process is phase-compatible, cutoff-amenable, safe at every system size via a
cutoff, and live at the cutoff size.

Pipeline: ``lang`` parses ``.mcy``/``.spec`` text, ``learner`` proposes
interpretations of the holes, ``semantics`` builds local/global transition
systems, ``decidability`` and ``checker`` look for violations, ``extract`` cuts
a minimal counterexample and ``encode`` turns it into a constraint for the
learner. ``synth`` drives the loop.
"""

__path__ = __import__("pkgutil").extend_path(__path__, __name__)

from .utils.envs import FORGE_VERSION as __version__
