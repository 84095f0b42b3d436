"""Synthetic example dataset and the standard refit plan.

The dataset is NOT measurement data.  Every row lies exactly on one of the
encoded fitted lines, at campaign-style frequencies, so that refitting it
reproduces the encoded coefficients.  It exists to exercise ingestion,
filtering and fitting end to end.

Rel-19 rows of UMi/UMa sheets carry weight 0: they sit on the Rel-19-only
line, which OLS/AM fits use unweighted, while the weighted fits over the
combined range see only the Rel-14 rows placed on the combined line.
"""

from __future__ import annotations

import csv
import io
from importlib import resources

from .dataset import HEADER, parse_sheet_name
from .fitting import ALL_RELEASES, FitSpec
from .models import DATABASE
from .types import Method, ModelKey, ModelSet, ParamModel, Release, Scenario

REL19_FREQS = {
    Scenario.UMi: (6.75, 10.0, 13.0, 15.0, 16.95),
    Scenario.UMa: (6.5, 7.0, 8.0, 10.5, 13.0, 15.0),
    Scenario.SMa: (3.4, 3.56, 7.0, 8.0, 15.0),
}
REL14_FREQS = (0.5, 2.0, 3.5, 6.0, 15.0, 28.0, 38.0, 60.0, 73.0, 100.0)
REL14_WEIGHTS = (1, 2, 1, 3, 2, 1, 2, 1, 1, 2)
PLYWOOD_FREQS = (0.5, 1.0, 2.0, 3.4, 6.75, 7.5, 13.0, 16.95, 20.0, 28.0, 30.0)

_SHEET_PARAM = {"ClusterASD": "Cluster_ASD"}


def sheet_for(key: ModelKey) -> str:
    if key.scenario is None:
        return "Plywood_Pen_Loss"
    param = _SHEET_PARAM.get(key.parameter.value, key.parameter.value)
    name = f"{key.scenario.value}_{key.statistic.value}_{param}"
    parse_sheet_name(name)
    return name


def release_filter(model: ParamModel) -> frozenset:
    if model.key.set is ModelSet.CombinedWLS:
        return ALL_RELEASES
    return frozenset({Release.Rel19})


def standard_plan() -> list[tuple[ModelKey, FitSpec]]:
    """One (key, spec) per fitted (non-legacy) model in the database."""
    plan = []
    for model in DATABASE:
        if model.method is Method.Encoded:
            continue
        spec = FitSpec(model.method, model.form.basis, model.fit_range_ghz, release_filter(model))
        plan.append((model.key, spec))
    return plan


def _rows():
    def fmt(x: float) -> str:
        return repr(float(x))

    for model in DATABASE:
        key = model.key
        if model.method is Method.Encoded:
            continue
        sheet = sheet_for(key)
        cond = "" if key.condition is None else key.condition.value
        stem = f"synthetic-{sheet}-{cond or 'any'}".lower()
        if key.scenario is None:
            for i, f in enumerate(PLYWOOD_FREQS):
                yield (sheet, cond, f"{stem}-{i:02d}", "Meas", "Rel19", fmt(f), "NA", fmt(model.form(f)), "")
        elif key.set is ModelSet.CombinedWLS:
            for i, (f, w) in enumerate(zip(REL14_FREQS, REL14_WEIGHTS)):
                kind = "RT" if i % 3 == 2 else "Meas"
                yield (sheet, cond, f"{stem}-rel14-{i:02d}", kind, "Rel14", fmt(f), "NA", fmt(model.form(f)), str(w))
        else:
            weight = "" if key.scenario is Scenario.SMa else "0"
            for i, f in enumerate(REL19_FREQS[key.scenario]):
                kind = "RT" if i % 4 == 3 else "Meas"
                yield (sheet, cond, f"{stem}-rel19-{i:02d}", kind, "Rel19", fmt(f), "400", fmt(model.form(f)), weight)


def render_csv() -> str:
    buf = io.StringIO()
    buf.write(HEADER + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(sorted(_rows(), key=lambda r: (r[0], r[1], r[4], float(r[5]))))
    return buf.getvalue()


def dataset_path():
    return resources.files("chanfit") / "data" / "synthetic_dataset.csv"


def manifest_path():
    return resources.files("chanfit") / "data" / "synthetic_manifest.json"


def registry_path():
    return resources.files("chanfit") / "data" / "registry.csv"


if __name__ == "__main__":
    import sys

    from .dataset import ingest_text

    text = render_csv()
    out = sys.argv[1] if len(sys.argv) > 1 else str(dataset_path())
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    manifest = ingest_text(text.encode("utf-8"), strict=True).manifest
    with open(str(manifest_path()), "w", encoding="utf-8") as fh:
        fh.write(manifest.to_json())
