#!/usr/bin/env python3
"""
Write rectangular grid-graph fixtures with a known Hamiltonian cycle
Usage: python scripts/write_grid_fixtures.py 2x2 2x3 4x4 [--out-dir data/grids] [--force]
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import argparse
import json
from pathlib import Path

from app.models import MtipError
from app.services.gadget_service import (
    BUNDLED_GRIDS_DIR, gen_grid_gadget, gadget_assignment_from_hamiltonian,
    grid_document, rectangular_grid, set_sender_interference,
)


def parse_size(text):
    """'2x3' -> (2, 3): rows by columns"""
    try:
        rows, columns = (int(part) for part in text.lower().split('x'))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected ROWSxCOLUMNS, got {text!r}")
    return rows, columns


def fixture_text(document):
    """One key per line, lists kept on one line like the shipped fixtures"""
    lines = [f'  {json.dumps(key)}: {json.dumps(value)}' for key, value in document.items()]
    return '{\n' + ',\n'.join(lines) + '\n}\n'


def write_fixture(rows, columns, out_dir, force):
    grid, cycle = rectangular_grid(rows, columns)

    # The cycle must encode to exactly 9 per vertex before it is shipped
    gadget = gen_grid_gadget(grid)
    assignment = gadget_assignment_from_hamiltonian(gadget, cycle)
    if set_sender_interference(gadget, assignment) != [9] * grid.n:
        print(f"  ❌ grid_{rows}x{columns}: cycle does not give 9 per vertex")
        return False

    path = out_dir / f'grid_{rows}x{columns}.json'
    if path.exists() and not force:
        print(f"  ⏭️  {path} exists, use --force to overwrite")
        return True
    path.write_text(fixture_text(grid_document(grid, cycle)))
    print(f"  ✅ {path}: {grid.n} vertices, {len(grid.edges)} edges")
    return True


def main():
    """Main function"""
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument('sizes', nargs='+', type=parse_size, help='ROWSxCOLUMNS, e.g. 2x3')
    parser.add_argument('--out-dir', type=Path, default=BUNDLED_GRIDS_DIR)
    parser.add_argument('--force', action='store_true', help='Overwrite existing fixtures')
    args = parser.parse_args()

    print("🧩 Writing grid-graph fixtures")
    print("=" * 50)
    args.out_dir.mkdir(parents=True, exist_ok=True)

    failures = 0
    for rows, columns in args.sizes:
        try:
            if not write_fixture(rows, columns, args.out_dir, args.force):
                failures += 1
        except MtipError as e:
            print(f"  ❌ {rows}x{columns}: {e}")
            failures += 1

    print("=" * 50)
    return 1 if failures else 0


if __name__ == '__main__':
    sys.exit(main())
