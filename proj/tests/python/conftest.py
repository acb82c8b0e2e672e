import os
import sys

# Locate the CMake-built extension and the package sources when running
# against a build tree (ctest exports both paths).
for var in ("POLCAL_EXT_DIR", "POLCAL_PKG_DIR"):
    path = os.environ.get(var)
    if path and path not in sys.path:
        sys.path.insert(0, path)
