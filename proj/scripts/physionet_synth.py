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
"""Synthetic ICU records in the PhysioNet 2019 PSV layout.

The generator is deterministic for a given numpy Generator. It produces
plausible hourly vitals, sparse labs and constant demographics; septic
patients drift towards tachycardia, fever, tachypnoea, leukocytosis and
hypotension after a random onset hour.
"""

import math

import numpy as np

VITALS = ["HR", "O2Sat", "Temp", "SBP", "MAP", "DBP", "Resp", "EtCO2"]
LABS = [
    "BaseExcess", "HCO3", "FiO2", "pH", "PaCO2", "SaO2", "AST", "BUN",
    "Alkalinephos", "Calcium", "Chloride", "Creatinine", "Bilirubin_direct",
    "Glucose", "Lactate", "Magnesium", "Phosphate", "Potassium",
    "Bilirubin_total", "TroponinI", "Hct", "Hgb", "PTT", "WBC", "Fibrinogen",
    "Platelets",
]
DEMOGRAPHICS = ["Age", "Gender", "Unit1", "Unit2", "HospAdmTime"]
COLUMNS = VITALS + LABS + DEMOGRAPHICS + ["ICULOS", "SepsisLabel"]

# (mean, sd, lo, hi, decimals)
VITAL_DIST = {
    "HR": (84.0, 12.0, 30, 200, 1),
    "O2Sat": (97.0, 2.0, 60, 100, 1),
    "Temp": (36.9, 0.5, 33, 42, 2),
    "SBP": (122.0, 18.0, 60, 220, 1),
    "MAP": (82.0, 12.0, 40, 160, 1),
    "DBP": (63.0, 10.0, 30, 130, 1),
    "Resp": (18.0, 3.5, 6, 50, 1),
    "EtCO2": (33.0, 5.0, 15, 60, 1),
}
LAB_DIST = {
    "BaseExcess": (-0.5, 3.5, -25, 20, 1),
    "HCO3": (24.0, 3.5, 8, 45, 1),
    "FiO2": (0.45, 0.15, 0.21, 1.0, 2),
    "pH": (7.38, 0.06, 6.9, 7.7, 2),
    "PaCO2": (41.0, 7.0, 15, 90, 1),
    "SaO2": (93.0, 4.0, 60, 100, 1),
    "AST": (45.0, 25.0, 5, 900, 0),
    "BUN": (20.0, 10.0, 2, 150, 0),
    "Alkalinephos": (80.0, 25.0, 20, 500, 0),
    "Calcium": (8.4, 0.7, 5, 12, 1),
    "Chloride": (105.0, 4.5, 85, 130, 0),
    "Creatinine": (1.1, 0.5, 0.2, 9, 2),
    "Bilirubin_direct": (0.4, 0.3, 0.05, 15, 2),
    "Glucose": (130.0, 35.0, 40, 500, 0),
    "Lactate": (1.7, 0.8, 0.3, 15, 1),
    "Magnesium": (2.0, 0.25, 1, 4, 1),
    "Phosphate": (3.4, 0.8, 1, 9, 1),
    "Potassium": (4.1, 0.45, 2.5, 7, 1),
    "Bilirubin_total": (0.9, 0.6, 0.1, 30, 1),
    "TroponinI": (0.1, 0.2, 0.01, 20, 2),
    "Hct": (31.0, 5.0, 15, 55, 1),
    "Hgb": (10.4, 1.7, 5, 18, 1),
    "PTT": (33.0, 8.0, 18, 150, 1),
    "WBC": (10.5, 3.5, 0.5, 60, 1),
    "Fibrinogen": (280.0, 90.0, 50, 900, 0),
    "Platelets": (190.0, 70.0, 5, 700, 0),
}
# Per-hour observation probability.
VITAL_OBS = {"HR": 0.92, "O2Sat": 0.88, "Temp": 0.35, "SBP": 0.85,
             "MAP": 0.88, "DBP": 0.7, "Resp": 0.85, "EtCO2": 0.04}
LAB_OBS_DEFAULT = 0.06
LAB_OBS = {"FiO2": 0.1, "pH": 0.08, "PaCO2": 0.07, "SaO2": 0.04,
           "Glucose": 0.18, "Hct": 0.1, "Hgb": 0.09, "WBC": 0.07,
           "Platelets": 0.06, "BUN": 0.07, "Creatinine": 0.07,
           "Potassium": 0.1, "Lactate": 0.03, "TroponinI": 0.01,
           "Fibrinogen": 0.007, "Bilirubin_direct": 0.002}

# Drift per hour after onset, in units of the variable's sd.
SEPTIC_DRIFT = {"HR": 0.25, "Temp": 0.3, "Resp": 0.25, "WBC": 0.25,
                "Lactate": 0.3, "MAP": -0.2, "SBP": -0.15,
                "Platelets": -0.15, "Creatinine": 0.15,
                "Bilirubin_total": 0.1, "O2Sat": -0.1}


def _fmt(value, decimals):
    if value is None:
        return "NaN"
    if decimals == 0:
        return str(int(round(value)))
    return f"{value:.{decimals}f}"


def generate_patient(rng, n_hours, septic, first_iculos=1):
    """Returns (rows, labels) where rows are dicts of floats or None."""
    base = {}
    for name, (mu, sd, lo, hi, _) in {**VITAL_DIST, **LAB_DIST}.items():
        base[name] = float(np.clip(rng.normal(mu, sd * 0.6), lo, hi))
    age = float(np.clip(rng.normal(62, 16), 18, 100))
    gender = int(rng.random() < 0.56)
    unit = rng.random()
    unit1 = None if unit < 0.4 else float(unit < 0.7)
    unit2 = None if unit1 is None else 1.0 - unit1
    hosp_adm = round(float(-abs(rng.normal(0, 40))), 2)
    onset = int(rng.integers(max(2, n_hours // 3), n_hours)) if septic else None

    rows, labels = [], []
    for h in range(n_hours):
        iculos = first_iculos + h
        row = {}
        for group, dist, obs in ((VITALS, VITAL_DIST, VITAL_OBS),
                                 (LABS, LAB_DIST, LAB_OBS)):
            for name in group:
                mu, sd, lo, hi, dec = dist[name]
                p = obs.get(name, LAB_OBS_DEFAULT) if group is LABS else obs[name]
                if rng.random() >= p:
                    row[name] = None
                    continue
                v = base[name] + rng.normal(0, sd * 0.3)
                if onset is not None and h >= onset - 6:
                    v += SEPTIC_DRIFT.get(name, 0.0) * sd * (h - onset + 6)
                row[name] = float(np.clip(v, lo, hi))
        row["Age"] = age
        row["Gender"] = float(gender)
        row["Unit1"] = unit1
        row["Unit2"] = unit2
        row["HospAdmTime"] = hosp_adm
        row["ICULOS"] = float(iculos)
        rows.append(row)
        labels.append(1 if onset is not None and h >= onset - 6 else 0)
    return rows, labels


def to_psv(rows, labels, with_label=True):
    cols = COLUMNS if with_label else COLUMNS[:-1]
    decimals = {k: v[4] for k, v in {**VITAL_DIST, **LAB_DIST}.items()}
    decimals.update({"Age": 2, "Gender": 0, "Unit1": 0, "Unit2": 0,
                     "HospAdmTime": 2, "ICULOS": 0})
    lines = ["|".join(cols)]
    for row, label in zip(rows, labels):
        cells = [_fmt(row.get(c), decimals[c]) for c in cols if c != "SepsisLabel"]
        if with_label:
            cells.append(str(label))
        lines.append("|".join(cells))
    return "\n".join(lines) + "\n"


def sigmoid(x):
    return 1.0 / (1.0 + math.exp(-x))
