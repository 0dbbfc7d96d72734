import os
import sys

# Under ctest, import the staged build rather than an editable install.
_pkg = os.environ.get("MOVCAT_PYPKG")
if _pkg:
    sys.meta_path[:] = [f for f in sys.meta_path if "ScikitBuild" not in type(f).__name__]
    sys.path.insert(0, _pkg)
    sys.modules.pop("movcat", None)
