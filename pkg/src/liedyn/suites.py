"""Property suites: seeded, deterministic batteries of exact identities.

Every suite returns a SuiteReport whose rendering depends only on the
arguments (space, samples, seed, window), never on time or environment,
so equal invocations produce byte-identical reports.

Suite names:

    jacobi-crossed    Jacobi identity for the extended crossed-product bracket
    jacobi-root       Jacobi identity for the transported root-generator bracket
    jacobi-char       Jacobi identity for the character-basis bracket
    cocycle-law       antisymmetry and the cyclic 2-cocycle identity for alpha
    tau-hom           transport is a linear bracket-preserving bijection
    char-vs-crossed   character-basis bracket agrees with the crossed bracket
                      under the character embedding (full enumeration on
                      finite spaces, sampled on the torus)
    local-relations   closed-form identities on grades -1, 0, +1
    cartan-affine     Cartan matrix is the affine cycle; Chevalley relations
    limit-hom         level inclusion is a Lie homomorphism (p-adic only)
    not-coboundary    the cocycle is not of the form f([x, y]) on a window
    table-audit       closed-form monomial bracket table vs the transport
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .crossed import (
    LieElem,
    bracket_extended,
    bracket_plain,
    cocycle_alpha,
    involution,
    verify_not_coboundary,
)
from .errors import LiedynError, NonFiniteBackendError
from .funcspace import Space
from .grammar import render_element
from .kacmoody import (
    cartan_matrix,
    chevalley_relation_matrix,
    include_level,
    is_affine_cycle_type,
)
from .rootform import audit_bracket_table, bracket_root, local_algebra_check, tau, tau_inverse
from .scalars import is_zero
from .sampling import (
    SplitMix64,
    random_char_elem,
    random_lie_elem,
    random_root_elem,
    random_tau_domain_elem,
)
from .spectrum import CharBasisElem, bracket_y, char_symbols, to_crossed

SUITE_NAMES = (
    "jacobi-crossed",
    "jacobi-root",
    "jacobi-char",
    "cocycle-law",
    "tau-hom",
    "char-vs-crossed",
    "local-relations",
    "cartan-affine",
    "limit-hom",
    "not-coboundary",
    "table-audit",
)

_DETAIL_CAP = 3


@dataclass
class SuiteReport:
    name: str
    space: str
    samples: int
    seed: int
    passed: bool
    checked: int
    failures: int
    details: list = field(default_factory=list)


def render_report(report: SuiteReport, color: bool = False) -> str:
    if report.passed:
        status = "\x1b[32mok\x1b[0m" if color else "ok"
        head = (
            f"{report.name} @ {report.space} [samples={report.samples} "
            f"seed={report.seed}]: {status} ({report.checked} checks)"
        )
    else:
        status = "\x1b[31mFAIL\x1b[0m" if color else "FAIL"
        head = (
            f"{report.name} @ {report.space} [samples={report.samples} "
            f"seed={report.seed}]: {status} ({report.failures} of "
            f"{report.checked} checks)"
        )
    return "\n".join([head] + [f"  {line}" for line in report.details])


def applicable_suites(space: Space):
    names = []
    for name in SUITE_NAMES:
        if name in ("cartan-affine", "not-coboundary") and not space.is_finite:
            continue
        if name == "limit-hom" and space.kind != "padic":
            continue
        names.append(name)
    return names


def run_suite(
    name: str, space: Space, samples: int = 200, seed: int = 0, window: int = 2
) -> SuiteReport:
    try:
        runner = _RUNNERS[name]
    except KeyError:
        raise LiedynError(f"unknown suite {name!r}") from None
    return runner(space, samples, seed, window)


def run_all(space: Space, samples: int = 200, seed: int = 0, window: int = 2):
    return [run_suite(n, space, samples, seed, window) for n in applicable_suites(space)]


# -- helpers -------------------------------------------------------------------


def _report(name, space, samples, seed, checked, failures, details):
    return SuiteReport(
        name=name,
        space=space.render(),
        samples=samples,
        seed=seed,
        passed=failures == 0,
        checked=checked,
        failures=failures,
        details=details[:_DETAIL_CAP] if name != "table-audit" else details,
    )


def _jacobi_suite(name, sampler, bracket, kind):
    def run(space, samples, seed, window):
        rng = SplitMix64(seed)
        failures = 0
        details = []
        for i in range(samples):
            a, b, c = sampler(rng, space), sampler(rng, space), sampler(rng, space)
            total = (
                bracket(bracket(a, b), c)
                + bracket(bracket(b, c), a)
                + bracket(bracket(c, a), b)
            )
            if not total.is_zero():
                failures += 1
                if len(details) < _DETAIL_CAP:
                    details.append(
                        f"triple {i}: a = {render_element(kind, a)}; "
                        f"b = {render_element(kind, b)}; "
                        f"c = {render_element(kind, c)}"
                    )
        return _report(name, space, samples, seed, samples, failures, details)

    return run


def _strip_central(a: LieElem) -> LieElem:
    return LieElem(a.space, dict(a.terms))


def _suite_cocycle(space, samples, seed, window):
    rng = SplitMix64(seed)
    failures = 0
    details = []
    for i in range(samples):
        a = _strip_central(random_lie_elem(rng, space))
        b = _strip_central(random_lie_elem(rng, space))
        c = _strip_central(random_lie_elem(rng, space))
        anti = cocycle_alpha(a, b) + cocycle_alpha(b, a)
        cyc = (
            cocycle_alpha(bracket_plain(a, b), c)
            + cocycle_alpha(bracket_plain(b, c), a)
            + cocycle_alpha(bracket_plain(c, a), b)
        )
        for label, value in (("antisymmetry", anti), ("cyclic identity", cyc)):
            if not is_zero(value):
                failures += 1
                if len(details) < _DETAIL_CAP:
                    details.append(
                        f"{label} fails at sample {i}: "
                        f"a = {render_element('crossed', a)}; "
                        f"b = {render_element('crossed', b)}; "
                        f"c = {render_element('crossed', c)}"
                    )
    return _report("cocycle-law", space, samples, seed, 2 * samples, failures, details)


def _suite_tau(space, samples, seed, window):
    rng = SplitMix64(seed)
    failures = 0
    details = []

    def fail(i, label, *elems):
        nonlocal failures
        failures += 1
        if len(details) < _DETAIL_CAP:
            rendered = "; ".join(render_element(k, v) for k, v in elems)
            details.append(f"{label} fails at sample {i}: {rendered}")

    for i in range(samples):
        a = random_tau_domain_elem(rng, space)
        b = random_tau_domain_elem(rng, space)
        r = random_root_elem(rng, space)
        ta, tb = tau(a), tau(b)
        if tau(a + b) != ta + tb:
            fail(i, "linearity", ("crossed", a), ("crossed", b))
        if tau_inverse(ta) != a:
            fail(i, "left inverse", ("crossed", a))
        if tau(tau_inverse(r)) != r:
            fail(i, "right inverse", ("root", r))
        if tau(bracket_extended(a, b)) != bracket_root(ta, tb):
            fail(i, "bracket transport", ("crossed", a), ("crossed", b))
        if a != b and ta == tb:
            fail(i, "injectivity", ("crossed", a), ("crossed", b))
    return _report("tau-hom", space, samples, seed, 5 * samples, failures, details)


def _suite_char_vs_crossed(space, samples, seed, window):
    failures = 0
    details = []
    checked = 0

    def check(y1, y2, label):
        nonlocal failures, checked
        checked += 1
        lhs = to_crossed(bracket_y(y1, y2))
        rhs = bracket_extended(to_crossed(y1), to_crossed(y2))
        if lhs != rhs:
            failures += 1
            if len(details) < _DETAIL_CAP:
                details.append(f"disagreement on {label}")

    if space.is_finite:
        symbols = char_symbols(space)
        grades = range(-3, 4)
        pairs = [
            (s1, n1, s2, n2)
            for s1 in symbols
            for n1 in grades
            for s2 in symbols
            for n2 in grades
        ]
        for s1, n1, s2, n2 in pairs:
            y1 = CharBasisElem.symbol(space, s1.index, n1)
            y2 = CharBasisElem.symbol(space, s2.index, n2)
            check(y1, y2, f"Y[{s1.index},{n1}] vs Y[{s2.index},{n2}]")
    else:
        rng = SplitMix64(seed)
        for i in range(samples):
            y1 = random_char_elem(rng, space)
            y2 = random_char_elem(rng, space)
            check(y1, y2, f"sample {i}: {render_element('char', y1)} vs "
                          f"{render_element('char', y2)}")
    return _report("char-vs-crossed", space, samples, seed, checked, failures, details)


def _suite_local(space, samples, seed, window):
    result = local_algebra_check(space, samples, seed)
    checked = sum(f["checked"] for f in result["families"])
    failures = sum(len(f["failures"]) for f in result["families"])
    details = []
    for fam in result["families"]:
        if fam["failures"] and len(details) < _DETAIL_CAP:
            first = fam["failures"][0]
            keys = [k for k in ("phi", "psi", "g") if k in first]
            rendered = "; ".join(
                f"{k} = {render_element('fn', first[k])}" for k in keys
            )
            details.append(
                f"family {fam['name']}: {len(fam['failures'])} failures, "
                f"first at sample {first['sample']}: {rendered}"
            )
    return _report("local-relations", space, samples, seed, checked, failures, details)


def _suite_cartan(space, samples, seed, window):
    if not space.is_finite:
        raise NonFiniteBackendError("cartan-affine needs a finite space")
    failures = 0
    details = []
    matrix = cartan_matrix(space)
    if not is_affine_cycle_type(matrix):
        failures += 1
        details.append("Cartan matrix is not the affine cycle")
    if matrix.corank() != 1:
        failures += 1
        details.append(f"corank is {matrix.corank()}, not 1")
    relations, ok = chevalley_relation_matrix(space)
    if not ok:
        failures += 1
        details.append("Chevalley generator relations do not close")
    if relations != [list(matrix.row(i)) for i in range(matrix.size)]:
        failures += 1
        details.append("bracket relations disagree with the Cartan matrix")
    return _report("cartan-affine", space, samples, seed, 4, failures, details)


def _suite_limit(space, samples, seed, window):
    if space.kind != "padic":
        raise LiedynError("limit-hom needs a p-adic space")
    rng = SplitMix64(seed)
    failures = 0
    details = []

    def fail(i, label, a, b=None):
        nonlocal failures
        failures += 1
        if len(details) < _DETAIL_CAP:
            extra = f"; b = {render_element('crossed', b)}" if b is not None else ""
            details.append(
                f"{label} fails at sample {i}: a = {render_element('crossed', a)}{extra}"
            )

    for i in range(samples):
        a = random_lie_elem(rng, space)
        b = random_lie_elem(rng, space)
        if include_level(bracket_extended(a, b)) != bracket_extended(
            include_level(a), include_level(b)
        ):
            fail(i, "bracket compatibility", a, b)
        if include_level(a + b) != include_level(a) + include_level(b):
            fail(i, "linearity", a, b)
        if include_level(involution(a)) != involution(include_level(a)):
            fail(i, "involution compatibility", a)
    return _report("limit-hom", space, samples, seed, 3 * samples, failures, details)


def _suite_not_coboundary(space, samples, seed, window):
    if not space.is_finite:
        raise NonFiniteBackendError("not-coboundary needs a finite space")
    infeasible = verify_not_coboundary(space, window)
    failures = 0 if infeasible else 1
    details = []
    if failures:
        details.append(
            f"a functional f with f([x,y]) matching the cocycle exists on "
            f"grade window {window}"
        )
    else:
        details.append(
            f"no functional f satisfies f([x,y]) = alpha(x,y) on grade "
            f"window {window} (rank certificate)"
        )
    return _report("not-coboundary", space, samples, seed, 1, failures, details)


_AUDIT_REQUIRED = (
    "same-sign-positive",
    "same-sign-negative",
    "zero-positive",
    "zero-negative",
    "opposite",
)
_AUDIT_INFORMATIONAL = ("mixed-positive", "mixed-negative")


def _suite_table_audit(space, samples, seed, window):
    result = audit_bracket_table(space, samples, seed)
    failures = 0
    details = []
    for name in _AUDIT_REQUIRED + _AUDIT_INFORMATIONAL:
        case = result["cases"][name]
        informational = name in _AUDIT_INFORMATIONAL
        if not informational:
            failures += case["mismatch"]
        tag = " [informational]" if informational else ""
        details.append(
            f"{name}: {case['verdict']} (exact={case['exact']}, "
            f"offset={case['offset']}, mismatch={case['mismatch']}){tag}"
        )
        first = case["first_mismatch"]
        if first is not None and (informational or case["mismatch"]):
            details.append(
                f"  first divergence: n={first['n']} m={first['m']} "
                f"phi = {render_element('fn', first['phi'])}; "
                f"psi = {render_element('fn', first['psi'])}; "
                f"closed form = {render_element('root', first['printed'])}; "
                f"transport = {render_element('root', first['transport'])}"
            )
    checked = len(_AUDIT_REQUIRED) * samples
    return _report("table-audit", space, samples, seed, checked, failures, details)


_RUNNERS = {
    "jacobi-crossed": _jacobi_suite(
        "jacobi-crossed", random_lie_elem, bracket_extended, "crossed"
    ),
    "jacobi-root": _jacobi_suite(
        "jacobi-root", random_root_elem, bracket_root, "root"
    ),
    "jacobi-char": _jacobi_suite(
        "jacobi-char", random_char_elem, bracket_y, "char"
    ),
    "cocycle-law": _suite_cocycle,
    "tau-hom": _suite_tau,
    "char-vs-crossed": _suite_char_vs_crossed,
    "local-relations": _suite_local,
    "cartan-affine": _suite_cartan,
    "limit-hom": _suite_limit,
    "not-coboundary": _suite_not_coboundary,
    "table-audit": _suite_table_audit,
}
