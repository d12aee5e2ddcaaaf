# Copyright 2026 The Sepsisflow Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the PSV test fixtures under tests/fixtures/.

Usage: python3 scripts/make_fixtures.py [--out tests/fixtures]
"""

import argparse
import pathlib

import numpy as np

import physionet_synth as synth


def main():
    parser = argparse.ArgumentParser()
    root = pathlib.Path(__file__).resolve().parent.parent
    parser.add_argument("--out", default=str(root / "tests" / "fixtures"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    rng = np.random.default_rng(20190101)

    # 40 columns (no label, like the hidden test set layout), 20 rows,
    # with one hole in the hourly axis at ICULOS 8.
    rows, labels = synth.generate_patient(rng, 21, septic=False)
    del rows[7]
    del labels[7]
    (out / "psv").mkdir(parents=True, exist_ok=True)
    (out / "psv" / "physionet_20rows.psv").write_text(
        synth.to_psv(rows, labels, with_label=False))

    patients = [("p000001", 18, False), ("p000002", 30, False),
                ("p000003", 12, True), ("p000004", 24, False),
                ("p000009", 40, True)]
    (out / "patients").mkdir(parents=True, exist_ok=True)
    for pid, hours, septic in patients:
        rows, labels = synth.generate_patient(rng, hours, septic)
        (out / "patients" / f"{pid}.psv").write_text(synth.to_psv(rows, labels))


if __name__ == "__main__":
    main()
