import sys
from pathlib import Path

try:
    import sluiceops  # noqa: F401
except ImportError:
    # Not installed: use the source package, which holds the built _core
    # module after a cmake build with -DSLUICEOPS_BUILD_PYTHON=ON.
    sys.path.insert(0, str(Path(__file__).resolve().parents[2] / "python"))
