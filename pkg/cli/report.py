"""
Report emission for the command line.

A report is a plain dictionary with 1-based indices and polynomials as their
canonical strings, so two runs on the same input serialize to the same bytes.
"""
import json
from dataclasses import asdict

from poly import render
from realization import ExtendedBrackets, Realization
from tensor import SymTensor

__all__ = ["tensor_entries", "build_report", "dump_json", "dump_text", "compare_golden"]

GOLDEN_SECTIONS = ("gamma", "theta_corrections", "jacobiator")


def tensor_entries(tensor: SymTensor, frame: str = "doubled") -> list[dict]:
    """ The nonzero canonical entries of a tensor, in lexicographic index order.

    Args:
        tensor (SymTensor): The tensor.
        frame (str): Naming frame passed to poly.render.

    Returns:
        list[dict]: {"lead": [...], "tail": [...], "poly": str} with 1-based indices.
    """
    return [{"lead": [i + 1 for i in lead],
             "tail": [i + 1 for i in tail],
             "poly": render(value, tensor.varset, frame)}
            for (lead, tail), value in tensor.items()]


def _matrix_entries(matrix: tuple, varset, upper: bool) -> list[dict]:
    entries = []
    for i, row in enumerate(matrix):
        for j, value in enumerate(row):
            if (upper and j <= i) or not value:
                continue
            entries.append({"lead": [i + 1, j + 1], "poly": render(value, varset, "doubled")})
    return entries


def build_report(real: Realization, source: dict, brackets: ExtendedBrackets | None = None,
                 checks: dict | None = None) -> dict:
    """ Collects everything a run produced into one serializable dictionary.

    Gamma tensors are functions of the Darboux coordinates and print in the
    "darboux" frame. The corrections, the jacobiator and the extended
    brackets print in the "doubled" frame.

    Args:
        real (Realization): The realization.
        source (dict): Echo of the input, e.g. {"example": "su2"} or {"file": path}.
        brackets (ExtendedBrackets, optional): Extended bracket table.
        checks (dict, optional): Named verification results, added to the
            diagnostics.

    Returns:
        dict: The report.
    """
    diagnostics = {"orders": [asdict(entry) for entry in real.diagnostics]}
    if checks is not None:
        diagnostics["checks"] = checks
    report = {
        "input": dict(source, theta=real.source.render(), params=list(real.varset.params)),
        "dim": real.varset.dim,
        "order": real.order,
        "gamma": [{"order": m + 1, "entries": tensor_entries(gamma, "darboux")}
                  for m, gamma in enumerate(real.gamma)],
        "theta_corrections": [{"order": m + 1, "entries": tensor_entries(correction)}
                              for m, correction in enumerate(real.theta_corr)],
        "jacobiator": [{"lead": entry["lead"], "poly": entry["poly"]}
                       for entry in tensor_entries(real.jacobiator)],
        "diagnostics": diagnostics,
    }
    if brackets is not None:
        report["extended_brackets"] = {
            "x_x": _matrix_entries(brackets.x_x, brackets.varset, upper=True),
            "x_xt": _matrix_entries(brackets.x_xt, brackets.varset, upper=False),
            "xt_xt": _matrix_entries(brackets.xt_xt, brackets.varset, upper=True),
        }
    return report


def dump_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _text_entries(lines: list, entries: list, indent: str = "  ") -> None:
    if not entries:
        lines.append(f"{indent}(zero)")
    for entry in entries:
        index = ",".join(str(i) for i in entry["lead"])
        if entry.get("tail"):
            index += ";" + ",".join(str(i) for i in entry["tail"])
        lines.append(f"{indent}[{index}] {entry['poly']}")


def dump_text(report: dict) -> str:
    """ A human-readable rendering of a report, stable like the JSON form. """
    lines = [f"dim {report['dim']}, order {report['order']}"]
    for key, value in sorted(report["input"].items()):
        if key != "theta":
            lines.append(f"input {key}: {value}")
    lines.append("theta:")
    _text_entries(lines, report["input"]["theta"])
    for section in report["gamma"]:
        lines.append(f"gamma order {section['order']}:")
        _text_entries(lines, section["entries"])
    for section in report["theta_corrections"]:
        lines.append(f"theta correction order {section['order']}:")
        _text_entries(lines, section["entries"])
    lines.append("jacobiator:")
    _text_entries(lines, report["jacobiator"])
    for name, entries in sorted(report.get("extended_brackets", {}).items()):
        lines.append(f"bracket {name}:")
        _text_entries(lines, entries)
    lines.append("diagnostics:")
    for entry in report["diagnostics"]["orders"]:
        fields = ", ".join(f"{key}={entry[key]}" for key in sorted(entry) if key != "order")
        lines.append(f"  order {entry['order']}: {fields}")
    for name, passed in sorted(report["diagnostics"].get("checks", {}).items()):
        lines.append(f"  {name}: {'ok' if passed else 'FAILED'}")
    return "\n".join(lines) + "\n"


def compare_golden(report: dict, golden: dict) -> list[str]:
    """ Names of the sections where a report differs from a stored one.

    Args:
        report (dict): Freshly computed report.
        golden (dict): Parsed JSON of a stored report.

    Returns:
        list[str]: The differing sections among dim, order and GOLDEN_SECTIONS.
    """
    return [section for section in ("dim", "order") + GOLDEN_SECTIONS
            if report.get(section) != golden.get(section)]
