"""Run every cross-check sweep and print the summary table"""

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))

import argparse
import logging
import time

from src.oracle import OracleHarness, OracleScope

logging.basicConfig(level=logging.INFO, stream=sys.stderr)
logger = logging.getLogger(__name__)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument('--seed', type=int, default=None)
    parser.add_argument('--inject-fault', action='store_true')
    parser.add_argument('--csv', type=Path, default=None, help="Directory for per-sweep case tables")
    args = parser.parse_args(argv)

    harness = OracleHarness(OracleScope.from_config(seed=args.seed), sign_fault=args.inject_fault)
    for sweep in ['enumeration', 'cyclic', 'sandwich', 'weil', 'maps']:
        start = time.perf_counter()
        harness.run([sweep])
        logger.info(f"{sweep} sweep took {time.perf_counter() - start:.1f}s")

    if args.csv is not None:
        args.csv.mkdir(parents=True, exist_ok=True)
        for name, frame in harness.results.items():
            frame.to_csv(args.csv / f"{name}.csv", index=False)

    summary = harness.summary()
    print(summary.to_string(index=False))
    return 3 if harness.mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
