"""
Computation pipeline: loads inputs, dispatches to the agents and builds
report documents. Stage timings go to the log only, so reports stay
byte-identical between runs.
"""
import logging
import os
import time
from datetime import datetime
from typing import Any, Dict, List, Optional, Tuple

import colorlog

from agents.deformation_agent import deformation_differential, integrate
from agents.massey_dgca_agent import dgca_massey, lie_coalgebra_massey, matric_massey
from agents.massey_dgla_agent import ClassAssignment, MasseyResult, massey_search
from services.algebra_defs import (
    Coalgebra,
    DGCAlgebra,
    FiniteDGLA,
    GradedLieAlgebra,
    LocalBaseAlgebra,
    validate_structures,
)
from services.builders import build_upper_triangular_lie_coalgebra, upper_triangular_positions
from services.ce_complex import CEComplex, Cochain, TableComplex, cohomology, nr_bracket
from services.errors import SchemaError, UsageError
from utils import serialization as ser

try:
    import config as cfg  # type: ignore
except Exception:
    cfg = None

LOG_LEVEL = getattr(cfg, "LOG_LEVEL", "INFO")
LOG_DIR = getattr(cfg, "LOG_DIR", "data/logs")

logger = logging.getLogger(__name__)

EXIT_BY_STATUS = {"verified": 0, "found": 0, "violation": 1, "obstructed": 1, "inconclusive": 2}


def configure_logging(level: Optional[str] = None, to_file: Optional[bool] = None) -> None:
    """Colored stderr handler plus, when enabled, a timestamped log file under LOG_DIR."""
    root = logging.getLogger()
    for h in list(root.handlers):
        root.removeHandler(h)
    root.setLevel(getattr(logging, (level or LOG_LEVEL).upper(), logging.INFO))

    stream = colorlog.StreamHandler()
    stream.setFormatter(colorlog.ColoredFormatter(
        "%(log_color)s%(asctime)s - %(name)s - %(levelname)s%(reset)s - %(message)s"
    ))
    root.addHandler(stream)

    if to_file if to_file is not None else getattr(cfg, "LOG_TO_FILE", False):
        os.makedirs(LOG_DIR, exist_ok=True)
        path = os.path.join(LOG_DIR, f"pipeline_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log")
        handler = logging.FileHandler(path)
        handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
        root.addHandler(handler)


def _element(ambient, degree: int, v):
    if isinstance(ambient, CEComplex):
        return ser.cochain_to_dict(ambient.element(degree, v))
    return ambient.describe(degree, v)


def _log_entries(records) -> List[Dict[str, Any]]:
    return [r.as_dict() for r in records]


def massey_report(result: MasseyResult, ambient, degrees: Dict[str, int]) -> Dict[str, Any]:
    report: Dict[str, Any] = {"status": result.status}
    if result.witness is not None:
        names = result.witness.coalgebra.names if result.witness.coalgebra is not None else None
        witness = {}
        for key, v in result.witness.alpha.items():
            name = names[key] if names is not None else key
            witness[name] = _element(ambient, degrees[name], v)
        report["witness"] = witness
    if result.products:
        report["products"] = {k: list(v) for k, v in result.products.items()}
    if result.obstruction is not None:
        stage, coords = result.obstruction
        report["obstruction"] = {"stage": stage, "class": list(coords)}
    if result.violations:
        report["violations"] = [v.as_dict() for v in result.violations]
    report["equations"] = list(result.equations)
    report["search_log"] = _log_entries(result.search_log)
    return report


class ComputationPipeline:
    """Dispatches one command and returns (exit code, report)."""

    def __init__(self):
        self.stats: Dict[str, float] = {}

    def _timed(self, stage: str, fn, *args, **kwargs):
        start = time.time()
        logger.info("=" * 80)
        logger.info("[%s] starting", stage)
        try:
            return fn(*args, **kwargs)
        finally:
            self.stats[stage] = time.time() - start
            logger.info("[%s] done in %.2fs", stage, self.stats[stage])

    # -- commands ----------------------------------------------------------

    def validate(self, path: str) -> Tuple[int, Dict[str, Any]]:
        obj = ser.load_structure(path)
        report = self._timed("validate", validate_structures, obj)
        status = "verified" if report.ok else "violation"
        return EXIT_BY_STATUS[status], {
            "command": "validate",
            "kind": report.kind,
            "dimension": obj.dim,
            "status": status,
            "violations": [v.as_dict() for v in report.violations],
        }

    def cohomology(self, path: str, degree: int) -> Tuple[int, Dict[str, Any]]:
        obj = ser.load_structure(path)
        if isinstance(obj, (FiniteDGLA, DGCAlgebra)):
            ambient = TableComplex(obj)
            space = self._timed("cohomology", ambient.cohomology, degree)
            reps = [ambient.describe(degree, v) for v in space.quotient.representatives]
        elif isinstance(obj, GradedLieAlgebra):
            space = self._timed("cohomology", cohomology, obj, degree)
            reps = [ser.cochain_to_dict(c) for c in space.representatives]
        else:
            raise UsageError("cohomology needs a Lie algebra, a finite DGLA or a DGCA", kind=obj.kind)
        return 0, {"command": "cohomology", "degree": degree, "dimension": space.dimension, "representatives": reps}

    def bracket(self, path: str, left: str, right: str) -> Tuple[int, Dict[str, Any]]:
        g = ser.load_structure(path)
        if not isinstance(g, GradedLieAlgebra):
            raise UsageError("bracket needs a Lie algebra file", kind=g.kind)
        phi = ser.load_cochain(g, left)
        psi = ser.load_cochain(g, right)
        result = self._timed("bracket", nr_bracket, phi, psi)
        return 0, {"command": "bracket", "arity": result.arity, "result": ser.cochain_to_dict(result)}

    def massey_dgla(self, query_path: str, mode: Optional[str], budget: Optional[int]) -> Tuple[int, Dict[str, Any]]:
        doc = ser.read_json(query_path)
        base_dir = ser.query_dir(query_path)
        target = ser.load_structure(doc.get("dgla") or ser._require(doc, "lie_algebra"), base_dir)
        coalgebra = ser.load_structure(ser._require(doc, "coalgebra"), base_dir)
        if not isinstance(coalgebra, Coalgebra) or not isinstance(target, GradedLieAlgebra):
            raise SchemaError("massey-dgla needs a Lie algebra or DGLA and a coalgebra")
        classes = doc.get("classes", {})
        a = {coalgebra.index(n): ser.coordinates(v) for n, v in classes.get("a", {}).items()}
        b = None
        if classes.get("b") is not None:
            b = {coalgebra.index(n): ser.coordinates(v) for n, v in classes["b"].items()}
        result = self._timed("massey-dgla", massey_search, target, coalgebra, ClassAssignment(a, b),
                             mode or doc.get("mode"), budget if budget is not None else ser.optional_int(doc, "budget"))
        ambient = CEComplex(target) if not isinstance(target, FiniteDGLA) else TableComplex(target)
        degrees = {n: d + 1 for n, d in zip(coalgebra.names, coalgebra.degrees)}
        report = {"command": "massey-dgla", **massey_report(result, ambient, degrees)}
        return EXIT_BY_STATUS[result.status], report

    def integrate(self, query_path: str, order: Optional[int], mode: Optional[str],
                  budget: Optional[int]) -> Tuple[int, Dict[str, Any]]:
        doc = ser.read_json(query_path)
        base_dir = ser.query_dir(query_path)
        g = ser.load_structure(ser._require(doc, "lie_algebra"), base_dir)
        base = ser.load_structure(ser._require(doc, "base"), base_dir)
        if not isinstance(g, GradedLieAlgebra) or not isinstance(base, LocalBaseAlgebra):
            raise SchemaError("integrate needs a Lie algebra and a local base")
        a = {n: ser.coordinates(v) for n, v in doc.get("classes", {}).items()}
        order = order if order is not None else ser.optional_int(doc, "order")
        result = self._timed("integrate", integrate, g, base, a, order, mode or doc.get("mode"),
                             budget if budget is not None else ser.optional_int(doc, "budget"))
        report: Dict[str, Any] = {"command": "integrate", "status": result.status}
        if result.bracket is not None:
            tau = result.bracket
            report["deformation"] = {tau.base.names[k]: ser.cochain_to_dict(tau.cochain(k)) for k in range(tau.base.dim)}
            report["differential"] = {k: list(v) for k, v in deformation_differential(tau).classes.items()}
        if result.obstruction is not None:
            stage, coords = result.obstruction
            report["obstruction"] = {"stage": stage, "class": list(coords)}
        report["equations"] = result.equations
        report["search_log"] = _log_entries(result.search_log)
        return EXIT_BY_STATUS[result.status], report

    def _dgca_inputs(self, query_path: str):
        doc = ser.read_json(query_path)
        algebra = ser.load_structure(ser._require(doc, "algebra"), ser.query_dir(query_path))
        if not isinstance(algebra, DGCAlgebra):
            raise SchemaError("massey-dgca needs a DGCA", kind=algebra.kind)
        return doc, algebra

    def massey_dgca(self, query_path: str, mode: Optional[str], budget: Optional[int]) -> Tuple[int, Dict[str, Any]]:
        doc, algebra = self._dgca_inputs(query_path)
        mode = mode or doc.get("mode")
        budget = budget if budget is not None else ser.optional_int(doc, "budget")
        try:
            classes = [(int(c["degree"]), ser.coordinates(c["coordinates"])) for c in ser._require(doc, "classes")]
            target = doc.get("target")
            target = None if target is None else (int(target["degree"]), ser.coordinates(target["coordinates"]))
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError("classes need degree and coordinates") from e
        ambient = TableComplex(algebra)
        if doc.get("route", "classical") == "lie-coalgebra":
            q = build_upper_triangular_lie_coalgebra([d for d, _ in classes])
            pos = upper_triangular_positions(q)
            a = {pos[(i, i + 1, 0, 0)]: coords for i, (_, coords) in enumerate(classes, start=1)}
            b = None if target is None else {pos[(1, len(classes) + 1, 0, 0)]: target[1]}
            result = self._timed("massey-dgca", lie_coalgebra_massey, algebra, q, a, b, mode, budget)
            degrees = {n: d + 1 for n, d in zip(q.names, q.degrees)}
        else:
            result = self._timed("massey-dgca", dgca_massey, algebra, classes, mode, budget, target)
            degrees = {r.key: r.degree for r in result.search_log}
        return EXIT_BY_STATUS[result.status], {"command": "massey-dgca", **massey_report(result, ambient, degrees)}

    def matric(self, query_path: str, blocks: Optional[List[int]], mode: Optional[str],
               budget: Optional[int]) -> Tuple[int, Dict[str, Any]]:
        doc, algebra = self._dgca_inputs(query_path)
        blocks = blocks or doc.get("blocks")
        if not blocks:
            raise UsageError("matric needs block sizes")
        try:
            classes = [(int(c["degree"]), [[ser.coordinates(e) for e in row] for row in c["matrix"]])
                       for c in ser._require(doc, "classes")]
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError("matrix classes need degree and matrix") from e
        result = self._timed("matric", matric_massey, algebra, blocks, classes,
                             mode or doc.get("mode"), budget if budget is not None else ser.optional_int(doc, "budget"))
        degrees = {r.key: r.degree for r in result.search_log}
        return EXIT_BY_STATUS[result.status], {"command": "matric", **massey_report(result, TableComplex(algebra), degrees)}


def render_text(report: Dict[str, Any]) -> str:
    """Plain summary: scalar fields, then equations and the stage log one per line."""
    lines = []
    for key, value in report.items():
        if isinstance(value, (str, int)):
            lines.append(f"{key}: {value}")
    for key in ("products", "obstruction", "differential"):
        if key in report:
            lines.append(f"{key}: {ser.to_jsonable(report[key])}")
    for v in report.get("violations", []):
        lines.append(f"violation: {v['identity']} at {v['indices']} {v['detail']}".rstrip())
    for eq in report.get("equations", []):
        lines.append(eq)
    for entry in report.get("search_log", []):
        shared = ",".join(entry["shared_by"]) or "-"
        lines.append(f"stage {entry['stage']} ({entry['role']}, degree {entry['degree']}): "
                     f"solutions {entry['solution_dimension']}, used by {shared}")
    return "\n".join(lines) + "\n"
