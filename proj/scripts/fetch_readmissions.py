#!/usr/bin/env python3
"""Build the hospital-readmissions score fixture for the empirical study.

Downloads the "Diabetes 130-US hospitals for years 1999-2008" dataset from
the UCI Machine Learning Repository (or reads a local copy), applies the
usual encounter restrictions, fits a 5-fold stratified logistic regression,
and writes the out-of-fold risk scores as a `score,label` CSV that
`respow empirical` and the optional acceptance criterion consume.

Restrictions (the standard ones for this dataset):
  * one encounter per patient (the first, by encounter id);
  * drop encounters discharged to death or hospice, where a readmission
    is impossible (discharge_disposition_id 11, 13, 14, 19, 20, 21).

That leaves 69,973 encounters with 6,277 thirty-day readmissions (~9%
prevalence). The outcome is readmitted == "<30".

Usage:
    python3 scripts/fetch_readmissions.py --out data/readmissions_scores.csv
    python3 scripts/fetch_readmissions.py --input /path/to/diabetic_data.csv

Then point the acceptance suite at the fixture:
    RESPOW_READMISSIONS=data/readmissions_scores.csv ./build/tests/acceptance
"""

import argparse
import io
import sys
import urllib.request
import zipfile
from pathlib import Path

import numpy as np
import pandas as pd
from sklearn.linear_model import LogisticRegression
from sklearn.model_selection import StratifiedKFold

UCI_URL = (
    "https://archive.ics.uci.edu/static/public/296/"
    "diabetes+130-us+hospitals+for+years+1999-2008.zip"
)

DEATH_HOSPICE_DISPOSITIONS = {11, 13, 14, 19, 20, 21}

NUMERIC_COLUMNS = [
    "time_in_hospital",
    "num_lab_procedures",
    "num_procedures",
    "num_medications",
    "number_outpatient",
    "number_emergency",
    "number_inpatient",
    "number_diagnoses",
]

CATEGORICAL_COLUMNS = [
    "race",
    "gender",
    "age",
    "admission_type_id",
    "discharge_disposition_id",
    "admission_source_id",
    "max_glu_serum",
    "A1Cresult",
    "metformin",
    "glimepiride",
    "glipizide",
    "glyburide",
    "pioglitazone",
    "rosiglitazone",
    "insulin",
    "change",
    "diabetesMed",
]


def load_raw(input_path: str | None) -> pd.DataFrame:
    if input_path:
        path = Path(input_path)
        if path.suffix == ".zip":
            with zipfile.ZipFile(path) as zf:
                name = next(n for n in zf.namelist() if n.endswith("diabetic_data.csv"))
                with zf.open(name) as f:
                    return pd.read_csv(f)
        return pd.read_csv(path)

    print(f"downloading {UCI_URL} ...", file=sys.stderr)
    with urllib.request.urlopen(UCI_URL) as response:
        payload = response.read()
    with zipfile.ZipFile(io.BytesIO(payload)) as zf:
        name = next(n for n in zf.namelist() if n.endswith("diabetic_data.csv"))
        with zf.open(name) as f:
            return pd.read_csv(f)


def apply_restrictions(df: pd.DataFrame) -> pd.DataFrame:
    df = df.sort_values("encounter_id")
    df = df.drop_duplicates(subset="patient_nbr", keep="first")
    df = df[~df["discharge_disposition_id"].isin(DEATH_HOSPICE_DISPOSITIONS)]
    return df.reset_index(drop=True)


def design_matrix(df: pd.DataFrame) -> np.ndarray:
    # diagnosis codes grouped by their leading character class
    diag = df["diag_1"].fillna("?").astype(str).str[0].replace({"E": "EV", "V": "EV"})
    parts = [pd.get_dummies(diag, prefix="diag1")]
    for col in CATEGORICAL_COLUMNS:
        parts.append(pd.get_dummies(df[col].astype(str), prefix=col))
    numeric = df[NUMERIC_COLUMNS].astype(float)
    numeric = (numeric - numeric.mean()) / numeric.std().replace(0.0, 1.0)
    parts.append(numeric)
    return pd.concat(parts, axis=1).to_numpy(dtype=float)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", help="local diabetic_data.csv or the UCI zip")
    parser.add_argument("--out", default="data/readmissions_scores.csv")
    parser.add_argument("--folds", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    df = apply_restrictions(load_raw(args.input))
    y = (df["readmitted"] == "<30").to_numpy(dtype=int)
    print(f"{len(df)} encounters, {int(y.sum())} readmissions "
          f"(prevalence {y.mean():.3f})", file=sys.stderr)

    X = design_matrix(df)
    scores = np.zeros(len(df))
    splitter = StratifiedKFold(n_splits=args.folds, shuffle=True, random_state=args.seed)
    for fold, (train, test) in enumerate(splitter.split(X, y)):
        model = LogisticRegression(max_iter=2000, solver="lbfgs")
        model.fit(X[train], y[train])
        scores[test] = model.predict_proba(X[test])[:, 1]
        print(f"fold {fold + 1}/{args.folds} done", file=sys.stderr)

    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w") as f:
        f.write("score,label\n")
        for s, label in zip(scores, y):
            f.write(f"{s!r},{label}\n")
    print(f"wrote {out_path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
