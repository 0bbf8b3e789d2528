#!/usr/bin/env python3
# Validates configs and CLI outputs against the JSON schemas.
# usage: validate_schema.py SCHEMA_DIR OUT_DIR CONFIG_DIR TOOL
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource


def load(path):
    with open(path) as f:
        return json.load(f)


def main():
    schema_dir, out_dir, cfg_dir = (pathlib.Path(p) for p in sys.argv[1:4])
    tool = sys.argv[4]
    schemas = {p.name: load(p) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(s)) for name, s in schemas.items())

    def check(schema_name, instance, label):
        validator = jsonschema.Draft202012Validator(schemas[schema_name], registry=registry)
        errors = sorted(validator.iter_errors(instance), key=lambda e: list(e.path))
        for e in errors:
            print(f"{label}: {'/'.join(map(str, e.path))}: {e.message}")
        return not errors

    ok = True
    for cfg in sorted(cfg_dir.glob("*.json")):
        ok &= check("config.schema.json", load(cfg), cfg.name)

    expected = {
        "verify": {"identity_report.json": "identity_report.schema.json"},
        "sweep": {"sweep_summary.json": "sweep_summary.schema.json"},
        "sweep_trivial": {"sweep_summary.json": "sweep_summary.schema.json"},
        "mm0": {"m_vs_m0_summary.json": "m_vs_m0_summary.schema.json"},
    }
    for sub, files in expected.items():
        d = out_dir / sub
        files = dict(files, **{"manifest.json": "manifest.schema.json"})
        for fname, schema in files.items():
            path = d / fname
            if not path.exists():
                print(f"missing output {path}")
                ok = False
                continue
            ok &= check(schema, load(path), f"{sub}/{fname}")
        report = d / "identity_report.json"
        if report.exists():
            ok &= check("config.schema.json", load(report)["config"], f"{sub}/identity_report.json#config")
        manifest = load(d / "manifest.json") if (d / "manifest.json").exists() else {"outputs": []}
        for listed in manifest["outputs"]:
            if not (d / listed).exists():
                print(f"{sub}: manifest lists missing file {listed}")
                ok = False

    for which in ["V", "Vtilde", "W", "M", "N", "M0", "Uplus", "Uminus"]:
        run = subprocess.run([tool, "det", str(cfg_dir / "standard.json"), "--which", which],
                             capture_output=True, text=True, check=False)
        if run.returncode != 0:
            print(f"det --which {which} exited {run.returncode}: {run.stderr}")
            ok = False
            continue
        ok &= check("det_output.schema.json", json.loads(run.stdout), f"det {which}")

    # zero amplitude: every determinant is one
    for which in ["V", "Vtilde", "W", "M", "N", "M0", "Uplus", "Uminus"]:
        run = subprocess.run([tool, "det", str(cfg_dir / "trivial.json"), "--which", which],
                             capture_output=True, text=True, check=False)
        out = json.loads(run.stdout) if run.returncode == 0 else None
        if out is None or abs(complex(out["value_re"], out["value_im"]) - 1.0) > 1e-12:
            print(f"trivial det --which {which}: {run.stdout.strip()} {run.stderr.strip()}")
            ok = False

    # negative fixtures: the schemas must reject these
    bad_config = load(cfg_dir / "standard.json")
    bad_config["colour"] = "blue"
    bad_det = {"which": "Q", "value_re": 1.0, "value_im": 0.0, "convergence_delta": 0.0, "rule_size": 1}
    for name, inst in [("config.schema.json", bad_config), ("det_output.schema.json", bad_det)]:
        if jsonschema.Draft202012Validator(schemas[name], registry=registry).is_valid(inst):
            print(f"{name} accepted an invalid fixture")
            ok = False

    print("all documents valid" if ok else "schema validation failed")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
