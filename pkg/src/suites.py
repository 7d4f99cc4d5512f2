"""Seeded property suites behind the verify command."""

import hashlib
import itertools
import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .automorphy import cocycle_defects, extract_zeta, generator_zeta, inversion_defect
from .classical import HECKE_LEVEL, Gamma0Element, enumerate_gamma0, hecke_sides
from .errors import (
    DimensionError,
    InputFormatError,
    SingularMatrixError,
    TermBudgetExceeded,
    ThetaTooSmallError,
)
from .generators import (
    compose_word,
    letter_from_dict,
    make_generator,
    random_letter,
    random_point,
    random_theta_word,
    word_from_json,
    word_to_json,
)
from .groups import (
    HeisenbergElement,
    JacobiGroupElement,
    act,
    is_symplectic,
    is_theta_element,
    jacobi_inverse,
    jacobi_mul,
)
from .oracles import gaussian_integral_closed, gaussian_integral_quadrature, poisson_check
from .point import SiegelJacobiPoint
from .theta import theta, theta_direct

logger = logging.getLogger(__name__)

ACTION_TOL = 1e-9
COCYCLE_TOL = 1e-9
ZETA_TOL = 1e-6
GENERATOR_TOL = 1e-8
GENERATOR_EVAL_TOL = 1e-12
INVERSION_TOL = 1e-8
LEMMA_TOL = 1e-6
POISSON_TOL = 1e-8
HECKE_TOL = 1e-8
HECKE_BOUND = 20
HECKE_TAUS = (1j, 0.25 + 1j / 3, -0.2 + 2j)
MIN_THETA = 1e-3
THEOREM_POINTS = 3
GENERATOR_POINTS = 5
NEAR_DEGENERATE_EIGS = (0.01, 0.1)
TERM_SAVING = 10.0
EVALUATION_ROUNDING = 1e-10

NUMERIC_ERRORS = (SingularMatrixError, TermBudgetExceeded, ThetaTooSmallError, OverflowError)


@dataclass(frozen=True)
class SuiteParams:
    """Shape and tolerance shared by every case of a run."""

    g: int = 1
    m: int = 1
    tol: float = 1e-9
    word_len: int = 8

    @classmethod
    def from_dict(cls, data: Any) -> 'SuiteParams':
        if not isinstance(data, dict):
            raise InputFormatError("expected an object", "params")
        try:
            return cls(int(data["g"]), int(data["m"]), float(data["tol"]), int(data["word_len"]))
        except (KeyError, TypeError, ValueError) as e:
            raise InputFormatError(f"bad params: {e}", "params") from e


Instance = Dict[str, Any]
Outcome = Tuple[bool, Dict[str, Any]]


@dataclass(frozen=True)
class Suite:
    """A named property: how to draw instances and how to check one.

    Attributes:
        name: Suite name used on the command line
        generate: (rng, params, count) -> JSON-serialisable instances
        check: (instance, params) -> (passed, metrics)
        summarize: Optional property over all case metrics
        max_mg: Largest m * g the suite supports
    """

    name: str
    generate: Callable[[np.random.Generator, SuiteParams, int], List[Instance]]
    check: Callable[[Instance, SuiteParams], Outcome]
    summarize: Optional[Callable[[List[Dict[str, Any]], List[Instance], SuiteParams], Outcome]] = None
    max_mg: Optional[int] = None


@dataclass
class RunReport:
    """Outcome of a suite run, ordered by case index."""

    command: Dict[str, Any]
    inputs_digest: str
    cases: int
    passed: int
    failed: int
    results: List[Dict[str, Any]] = field(default_factory=list)
    failures: List[Dict[str, Any]] = field(default_factory=list)
    summary: Optional[Dict[str, Any]] = None
    wall_time: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0 and (self.summary is None or self.summary.get("passed", True))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        if self.wall_time is None:
            del data["wall_time"]
        if self.summary is None:
            del data["summary"]
        data["ok"] = self.ok
        return data


def _digest(instances: List[Instance]) -> str:
    blob = json.dumps(instances, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _seed(rng: np.random.Generator) -> int:
    return int(rng.integers(2 ** 31))


def _word_length(rng: np.random.Generator, params: SuiteParams) -> int:
    return int(rng.integers(min(1, params.word_len), params.word_len + 1))


def _random_word(rng: np.random.Generator, params: SuiteParams) -> List[Dict[str, Any]]:
    word = random_theta_word(params.g, params.m, _word_length(rng, params), _seed(rng))
    return word_to_json(word)


def _point(rng: np.random.Generator, params: SuiteParams, **kwargs) -> Dict[str, Any]:
    return random_point(rng, params.g, params.m, **kwargs).to_dict()


def _nonvanishing_point(rng: np.random.Generator, params: SuiteParams) -> Dict[str, Any]:
    """Random point where |Theta| >= MIN_THETA, so it can be divided by."""
    while True:
        p = random_point(rng, params.g, params.m)
        if abs(theta(p, params.tol).value) >= MIN_THETA:
            return p.to_dict()


def _complex(z: complex) -> List[float]:
    return [z.real, z.imag]


# action / cocycle / groups

def _gen_pairs(rng: np.random.Generator, params: SuiteParams, count: int) -> List[Instance]:
    return [{"word1": _random_word(rng, params), "word2": _random_word(rng, params),
             "point": _point(rng, params)} for _ in range(count)]


def _check_action(instance: Instance, params: SuiteParams) -> Outcome:
    x1 = compose_word(word_from_json(instance["word1"]), params.g, params.m)
    x2 = compose_word(word_from_json(instance["word2"]), params.g, params.m)
    p = SiegelJacobiPoint.from_dict(instance["point"])
    together = act(jacobi_mul(x1, x2), p)
    stepwise = act(x1, act(x2, p))
    scale = max(1.0, float(np.max(np.abs(together.omega))), float(np.max(np.abs(together.z))))
    defect = together.distance(stepwise) / scale
    min_eig = together.min_eigenvalue()
    return defect < ACTION_TOL and min_eig > 0, {"defect": defect, "min_eigenvalue": min_eig}


def _check_cocycle(instance: Instance, params: SuiteParams) -> Outcome:
    x1 = compose_word(word_from_json(instance["word1"]), params.g, params.m)
    x2 = compose_word(word_from_json(instance["word2"]), params.g, params.m)
    p = SiegelJacobiPoint.from_dict(instance["point"])
    j_defect, jstar_defect = cocycle_defects(x1, x2, p)
    passed = j_defect < COCYCLE_TOL and jstar_defect < COCYCLE_TOL
    return passed, {"j_defect": j_defect, "jstar_squared_defect": jstar_defect}


def _gen_triples(rng: np.random.Generator, params: SuiteParams, count: int) -> List[Instance]:
    return [{"word1": _random_word(rng, params), "word2": _random_word(rng, params),
             "word3": _random_word(rng, params), "point": _point(rng, params)}
            for _ in range(count)]


def _heisenberg_closed(h: HeisenbergElement) -> bool:
    s = h.kappa + h.mu @ h.lam.T
    return bool(np.array_equal(s, s.T))


def _check_groups(instance: Instance, params: SuiteParams) -> Outcome:
    g, m = params.g, params.m
    x1, x2, x3 = (compose_word(word_from_json(instance[k]), g, m)
                  for k in ("word1", "word2", "word3"))

    associative = jacobi_mul(jacobi_mul(x1, x2), x3) == jacobi_mul(x1, jacobi_mul(x2, x3))
    product = jacobi_mul(x1, x2)
    closed = _heisenberg_closed(product.h) and is_symplectic(product.gamma.matrix)
    theta_closed = is_theta_element(product.gamma)
    inverse_ok = (is_theta_element(jacobi_inverse(x1).gamma) == is_theta_element(x1.gamma)
                  and jacobi_mul(x1, jacobi_inverse(x1)) == JacobiGroupElement.identity(g, m))
    passed_action, action = _check_action(instance, params)
    passed = associative and closed and theta_closed and inverse_ok and passed_action
    return passed, {"associative": associative, "heisenberg_closed": closed,
                    "theta_closed": theta_closed, "inverse": inverse_ok, **action}


# theorem / generators

def _gen_theorem(rng: np.random.Generator, params: SuiteParams, count: int) -> List[Instance]:
    instances = []
    for _ in range(count):
        word = _random_word(rng, params)
        points = [_nonvanishing_point(rng, params) for _ in range(THEOREM_POINTS)]
        instances.append({"word": word, "points": points})
    return instances


def _zeta_key(zeta: complex, g: int, m: int) -> complex:
    # the principal branch of det(C Om + D)^(1/2) may flip sign between points
    return zeta * zeta if g >= 2 and m % 2 else zeta


def _check_theorem(instance: Instance, params: SuiteParams) -> Outcome:
    x = compose_word(word_from_json(instance["word"]), params.g, params.m)
    reports = [extract_zeta(x, SiegelJacobiPoint.from_dict(pt), params.tol)
               for pt in instance["points"]]
    modulus = max(r.modulus_defect for r in reports)
    eighth = max(r.zeta_eighth_defect for r in reports)
    keys = [_zeta_key(r.zeta, params.g, params.m) for r in reports]
    spread = max((abs(a - b) for a, b in itertools.combinations(keys, 2)), default=0.0)
    passed = modulus < ZETA_TOL and eighth < ZETA_TOL and spread < ZETA_TOL
    return passed, {"zeta": [_complex(r.zeta) for r in reports], "modulus_defect": modulus,
                    "eighth_defect": eighth, "spread": spread}


def _gen_generators(rng: np.random.Generator, params: SuiteParams, count: int) -> List[Instance]:
    instances = []
    for _ in range(count):
        letter = random_letter(rng, params.g, params.m)
        points = [_nonvanishing_point(rng, params) for _ in range(GENERATOR_POINTS)]
        instances.append({"letter": letter.to_dict(), "points": points})
    return instances


def _check_generators(instance: Instance, params: SuiteParams) -> Outcome:
    letter = letter_from_dict(instance["letter"])
    x = make_generator(letter, params.g, params.m)
    expected, exact = generator_zeta(letter, params.g, params.m)
    defects = []
    zetas = []
    for pt in instance["points"]:
        zeta = extract_zeta(x, SiegelJacobiPoint.from_dict(pt), GENERATOR_EVAL_TOL).zeta
        zetas.append(_complex(zeta))
        defects.append(abs(zeta - expected) if exact else abs(zeta ** 2 - expected ** 2))
    defect = max(defects)
    return defect < GENERATOR_TOL, {"kind": letter.kind, "expected": _complex(expected),
                                    "exact": exact, "zeta": zetas, "defect": defect}


# inversion / evaluation

def _gen_points(rng: np.random.Generator, params: SuiteParams, count: int) -> List[Instance]:
    return [{"point": _point(rng, params)} for _ in range(count)]


def _check_inversion(instance: Instance, params: SuiteParams) -> Outcome:
    defect = inversion_defect(SiegelJacobiPoint.from_dict(instance["point"]), params.tol)
    return defect < INVERSION_TOL, {"defect": defect}


def _gen_evaluation(rng: np.random.Generator, params: SuiteParams, count: int) -> List[Instance]:
    instances = []
    for index in range(count):
        if index % 5 == 4:
            lo, hi = np.log10(NEAR_DEGENERATE_EIGS)
            eps = float(10 ** rng.uniform(lo, hi))
            point = _point(rng, params, min_eig=eps,
                           max_eig=eps if params.g == 1 else NEAR_DEGENERATE_EIGS[1],
                           real_scale=eps / 2)
            instances.append({"point": point, "near_degenerate": True})
        else:
            instances.append({"point": _point(rng, params), "near_degenerate": False})
    return instances


def _check_evaluation(instance: Instance, params: SuiteParams) -> Outcome:
    p = SiegelJacobiPoint.from_dict(instance["point"])
    reduced = theta(p, params.tol)
    direct = theta_direct(p, params.tol)
    diff = abs(reduced.value - direct.value)
    # error_bound covers truncation and the size of the summed terms; the
    # last slack covers the final division by the reduction multiplier
    allowed = reduced.error_bound + direct.error_bound + EVALUATION_ROUNDING * max(1.0, abs(direct.value))
    return diff <= allowed, {"difference": diff, "allowed": allowed,
                             "rounding_direct": direct.rounding_bound,
                             "terms_reduced": reduced.terms_used, "terms_direct": direct.terms_used,
                             "reduction_steps": reduced.reduction_steps,
                             "near_degenerate": bool(instance.get("near_degenerate"))}


def _summarize_evaluation(metrics: List[Dict[str, Any]], instances: List[Instance],
                          params: SuiteParams) -> Outcome:
    near = [r for r in metrics if r.get("near_degenerate") and "terms_direct" in r]
    direct = sum(r["terms_direct"] for r in near)
    reduced = sum(r["terms_reduced"] for r in near)
    ratio = direct / reduced if reduced else None
    enforced = params.g == 1 and params.m == 1 and bool(near)
    passed = not enforced or (ratio is not None and ratio >= TERM_SAVING)
    return passed, {"near_degenerate_cases": len(near), "terms_direct": direct,
                    "terms_reduced": reduced, "term_ratio": ratio, "ratio_enforced": enforced}


# lemma / poisson

def _check_lemma(instance: Instance, params: SuiteParams) -> Outcome:
    p = SiegelJacobiPoint.from_dict(instance["point"])
    closed = gaussian_integral_closed(p)
    quadrature = gaussian_integral_quadrature(p)
    defect = abs(quadrature - closed)
    return defect < LEMMA_TOL, {"closed": _complex(closed), "quadrature": _complex(quadrature),
                                "defect": defect}


def _check_poisson(instance: Instance, params: SuiteParams) -> Outcome:
    defect = poisson_check(SiegelJacobiPoint.from_dict(instance["point"]), params.tol)
    return defect < POISSON_TOL, {"defect": defect}


# hecke

def _gen_hecke(rng: np.random.Generator, params: SuiteParams, count: int) -> List[Instance]:
    pool = [(gamma, tau) for gamma in enumerate_gamma0(HECKE_LEVEL, HECKE_BOUND)
            for tau in HECKE_TAUS]
    if count < len(pool):
        keep = np.sort(rng.choice(len(pool), size=count, replace=False))
        pool = [pool[int(i)] for i in keep]
    return [{"gamma": gamma.to_dict(), "tau": _complex(tau)} for gamma, tau in pool]


def _check_hecke(instance: Instance, params: SuiteParams) -> Outcome:
    gamma = Gamma0Element.from_dict(instance["gamma"], HECKE_LEVEL)
    tau = instance["tau"]
    if not (isinstance(tau, list) and len(tau) == 2):
        raise InputFormatError("expected [re, im]", "tau")
    lhs, rhs = hecke_sides(gamma, complex(tau[0], tau[1]), params.tol)
    defect = abs(lhs - rhs)
    return defect < HECKE_TOL, {"lhs": _complex(lhs), "rhs": _complex(rhs), "defect": defect}


SUITES: Dict[str, Suite] = {
    "action": Suite("action", _gen_pairs, _check_action),
    "cocycle": Suite("cocycle", _gen_pairs, _check_cocycle),
    "theorem": Suite("theorem", _gen_theorem, _check_theorem),
    "hecke": Suite("hecke", _gen_hecke, _check_hecke),
    "lemma": Suite("lemma", _gen_points, _check_lemma, max_mg=2),
    "poisson": Suite("poisson", _gen_points, _check_poisson),
    "generators": Suite("generators", _gen_generators, _check_generators),
    "inversion": Suite("inversion", _gen_points, _check_inversion),
    "evaluation": Suite("evaluation", _gen_evaluation, _check_evaluation, _summarize_evaluation),
    "groups": Suite("groups", _gen_triples, _check_groups),
}


def _run_cases(suite: Suite, instances: List[Instance], params: SuiteParams,
               indices: List[int], command: Dict[str, Any],
               on_progress: Optional[Callable[[str], None]]) -> RunReport:
    results = []
    failures = []
    for n, (index, instance) in enumerate(zip(indices, instances)):
        try:
            passed, metrics = suite.check(instance, params)
        except NUMERIC_ERRORS as e:
            passed, metrics = False, {"error": f"{type(e).__name__}: {e}"}
        results.append({"index": index, "passed": passed, **metrics})
        if not passed:
            failures.append({"suite": suite.name, "index": index,
                             "params": asdict(params), "instance": instance})
            logger.warning("%s case %d failed: %s", suite.name, index, metrics)
        if on_progress:
            on_progress(f"{suite.name}: case {n + 1}/{len(instances)}")

    summary = None
    if suite.summarize is not None:
        summary_passed, summary = suite.summarize(results, instances, params)
        summary = {"passed": summary_passed, **summary}

    return RunReport(
        command=command,
        inputs_digest=_digest(instances),
        cases=len(instances),
        passed=len(instances) - len(failures),
        failed=len(failures),
        results=results,
        failures=failures,
        summary=summary,
    )


def run_suite(name: str, params: SuiteParams, count: int, seed: int,
              on_progress: Optional[Callable[[str], None]] = None) -> RunReport:
    """Draw count instances from a seeded generator and check each one.

    Args:
        name: Key of SUITES
        params: Shape and tolerance
        count: Number of cases (0 gives a vacuous pass)
        seed: Seed of the only random generator of the run
        on_progress: Called with a short message after each case

    Raises:
        KeyError: if name is not a known suite
        DimensionError: if the suite does not support m * g
    """
    suite = SUITES[name]
    if suite.max_mg is not None and params.g * params.m > suite.max_mg:
        raise DimensionError(f"suite {name} needs m * g <= {suite.max_mg}")
    rng = np.random.default_rng(seed)
    instances = suite.generate(rng, params, count) if count > 0 else []
    command = {"suite": name, "seed": seed, "count": count, **asdict(params)}
    return _run_cases(suite, instances, params, list(range(len(instances))), command, on_progress)


def replay(data: Any, on_progress: Optional[Callable[[str], None]] = None) -> RunReport:
    """Re-run serialised failures.

    Args:
        data: A run report (its failures are replayed), a list of failure
            entries, or a single entry {"suite", "index", "params", "instance"}

    Raises:
        InputFormatError: if the entries cannot be decoded
    """
    if isinstance(data, dict) and "failures" in data:
        entries = data["failures"]
    elif isinstance(data, dict):
        entries = [data]
    else:
        entries = data
    if not isinstance(entries, list):
        raise InputFormatError("expected failure entries", "replay")

    names = set()
    for entry in entries:
        if not isinstance(entry, dict) or not {"suite", "index", "params", "instance"} <= entry.keys():
            raise InputFormatError("entries need suite, index, params and instance", "replay")
        if entry["suite"] not in SUITES:
            raise InputFormatError(f"unknown suite {entry['suite']!r}", "replay")
        names.add(entry["suite"])
    if len(names) > 1:
        raise InputFormatError("entries from more than one suite", "replay")
    if not entries:
        return RunReport({"replay": True}, _digest([]), 0, 0, 0)

    suite = SUITES[names.pop()]
    params = SuiteParams.from_dict(entries[0]["params"])
    if any(SuiteParams.from_dict(e["params"]) != params for e in entries):
        raise InputFormatError("entries with different params", "replay")
    instances = [e["instance"] for e in entries]
    indices = [int(e["index"]) for e in entries]
    command = {"replay": True, "suite": suite.name, **asdict(params)}
    try:
        return _run_cases(suite, instances, params, indices, command, on_progress)
    except (KeyError, TypeError) as e:
        raise InputFormatError(f"malformed instance: {e}", "replay") from e
