"""Print the full reproduction report (same as ``hnnkit verify-paper``)."""

import sys

from hnnkit.reproduce import verify_paper

if __name__ == "__main__":
    report = verify_paper()
    print(report.format())
    sys.exit(0 if report.passed else 1)
