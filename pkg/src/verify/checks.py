"""
Registro de comprobaciones: cada entrada asocia un identificador con la afirmación que
verifica y la función que la ejecuta sobre un `Workbench`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.geometry.spread import fixed_members, spread_permutations, validate_spread
from src.geometry.symplectic import (
    adjoint, are_isometries, gram_from_field_reduction, is_isometry, is_totally_isotropic,
)
from src.groups.action import spread_orbits, stabilizer
from src.groups.matgroup import (
    centralizer_in, closure, is_solvable, normalizer_in, structure_probe, sylow,
)
from src.groups.model import build_sl2
from src.groups.subgroups import all_subgroups, find_subgroups_of_order
from src.linalg.endomorphism import commutant_dimension, matrix_order, minimal_polynomial
from src.linalg.fq import i4_scalar
from src.linalg.polynomial import degree, format_poly, is_irreducible
from src.linalg.subspace import eigenspace, intersect, rref_subspace, subspace_sum
from src.numtheory.zsigmondy import fermat_exception_check
from src.verify.workbench import Workbench

Outcome = tuple[bool, list[str]]


class CheckSkipped(Exception):
    """La comprobación no aplica a estos parámetros."""


@dataclass(frozen=True)
class Check:
    check_id: str
    claim: str
    run: Callable[[Workbench], Outcome]


CHECKS: dict[str, Check] = {}


def register(check_id: str, claim: str):
    def decorator(fn: Callable[[Workbench], Outcome]) -> Callable[[Workbench], Outcome]:
        if check_id in CHECKS:
            raise ValueError(f"comprobación duplicada: {check_id}")
        CHECKS[check_id] = Check(check_id, claim, fn)
        return fn
    return decorator


def _matrix(M) -> str:
    return str(np.asarray(M).tolist())


def _require_q1(wb: Workbench) -> int:
    if wb.ctx.q % 4 != 1:
        raise CheckSkipped(f"requiere q ≡ 1 (mod 4); q = {wb.ctx.q}")
    return i4_scalar(wb.ctx)


def _require_zsigmondy(wb: Workbench) -> list[int]:
    primes = list(wb.zsig.values)
    if not primes:
        raise CheckSkipped(f"q^{wb.ctx.n} - 1 = {wb.ctx.q ** wb.ctx.n - 1} no tiene primos de Zsigmondy")
    return primes


# --- forma y spread ---

@register("spread.valid", "Ω: q^m+1 subespacios m-dimensionales totalmente isótropos que particionan V'")
def check_spread_valid(wb: Workbench) -> Outcome:
    report = validate_spread(wb.spread, wb.form)
    return report.passed, list(report.witnesses)


@register("form.nondegenerate", "f(x,y) = Tr(ε x y^{q^m}) es alternada y no degenerada")
def check_form_nondegenerate(wb: Workbench) -> Outcome:
    form = wb.form
    alternating = form.is_alternating()
    rank = wb.scalars.rank(form.gram)
    return alternating and rank == form.n, [
        f"Gram = {_matrix(form.gram)}",
        f"alternada = {alternating}, rango = {rank} de {form.n}",
    ]


@register("form.field_reduction", "g = Tr_{q^m→q}(F(u,v)) coincide con la forma traza")
def check_form_field_reduction(wb: Workbench) -> Outcome:
    reduced = gram_from_field_reduction(wb.ctx)
    equal = reduced == wb.form
    witnesses = [f"Gram de Tr∘F = {_matrix(reduced.gram)}"]
    if not equal:
        witnesses.append(f"Gram de la forma traza = {_matrix(wb.form.gram)}")
    return equal, witnesses


# --- π y ρ ---

@register("pi_rho.isometry", "π y ρ son isometrías de f")
def check_pi_rho_isometry(wb: Workbench) -> Outcome:
    s = wb.scalars
    pi_ok = is_isometry(wb.pi, wb.form)
    rho_ok = is_isometry(wb.rho, wb.form)
    # para una isometría, M* = M⁻¹
    adjoints = all(
        np.array_equal(adjoint(M, wb.form), s.inverse(M)) for M in (wb.pi, wb.rho)
    )
    return pi_ok and rho_ok and adjoints, [
        f"π isometría = {pi_ok}",
        f"ρ isometría = {rho_ok}",
        f"π* = π⁻¹ y ρ* = ρ⁻¹: {adjoints}",
    ]


@register("pi_rho.relation", "πρ = ρ^q π")
def check_pi_rho_relation(wb: Workbench) -> Outcome:
    s = wb.scalars
    left = s.matmul(wb.pi, wb.rho)
    right = s.matmul(s.mat_pow(wb.rho, wb.ctx.q), wb.pi)
    equal = bool(np.array_equal(left, right))
    witnesses = [f"πρ = {_matrix(left)}"]
    if not equal:
        witnesses.append(f"ρ^q π = {_matrix(right)}")
    return equal, witnesses


@register("pi_rho.orders", "π tiene orden 4m con π^{2m} = -I; ρ tiene orden q^m+1 con ρ^{(q^m+1)/2} = -I")
def check_pi_rho_orders(wb: Workbench) -> Outcome:
    s, m, qm = wb.scalars, wb.ctx.m, wb.ctx.q ** wb.ctx.m
    pi_order = matrix_order(s, wb.pi)
    rho_order = matrix_order(s, wb.rho)
    pi_half = bool(np.array_equal(s.mat_pow(wb.pi, 2 * m), wb.minus_identity))
    rho_half = bool(np.array_equal(s.mat_pow(wb.rho, (qm + 1) // 2), wb.minus_identity))
    ok = pi_order == 4 * m and rho_order == qm + 1 and pi_half and rho_half
    return ok, [
        f"orden(π) = {pi_order} (esperado {4 * m}), π^{2 * m} = -I: {pi_half}",
        f"orden(ρ) = {rho_order} (esperado {qm + 1}), ρ^{(qm + 1) // 2} = -I: {rho_half}",
    ]


# --- el grupo G = <π, ρ> ---

@register("G.structure", "G es metacíclico de orden 2m(q^m+1), con única involución -I, "
                         "Sylow-2 cíclico y normalizadores de orden 4m (q ≡ 1 mod 4 o m par)")
def check_g_structure(wb: Workbench) -> Outcome:
    ctx = wb.ctx
    q, m = ctx.q, ctx.m
    if q % 4 != 1 and m % 2 != 0:
        probe = structure_probe(wb.G)
        raise CheckSkipped(
            f"hipótesis no satisfecha (q = {q} ≡ 3 mod 4, m = {m} impar); observado: "
            f"Sylow-2 de orden {probe.sylow2_order}, cíclico = {probe.sylow2_cyclic}"
        )
    s, G = wb.scalars, wb.G
    probe = structure_probe(G)
    rho2 = s.matmul(wb.rho, wb.rho)
    A = closure(s, rho2, G.order)
    B = closure(s, wb.pi, G.order)
    meet = sum(1 for key in A.keys if key in B.index)
    pi_m = s.mat_pow(wb.pi, m)
    inverted = s.matmul_chain(pi_m, rho2, s.inverse(pi_m))
    inverts = bool(np.array_equal(inverted, s.inverse(rho2)))
    involution_is_minus_i = probe.unique_involution and G.contains(wb.minus_identity)
    expected = 2 * m * (q ** m + 1)
    ok = (
        G.order == expected
        and meet == 1
        and A.order * B.order == G.order
        and inverts
        and involution_is_minus_i
        and probe.sylow2_cyclic
        and all(k == 4 * m for k in probe.order4_normalizers)
    )
    return ok, [
        f"|G| = {G.order} (esperado {expected})",
        f"|A| = {A.order}, |B| = {B.order}, |A ∩ B| = {meet}",
        f"π^m invierte A: {inverts}",
        f"involuciones = {probe.involution_count}, única = -I: {involution_is_minus_i}",
        f"Sylow-2 de orden {probe.sylow2_order}, cíclico = {probe.sylow2_cyclic}",
        f"normalizadores de subgrupos de orden 4: {list(probe.order4_normalizers)} (esperado {4 * m})",
    ]


@register("G.sylow2_remark", "con q ≡ 3 mod 4 y m impar el Sylow-2 de G puede ser cuaternión "
                             "generalizado y los normalizadores de orden 4 superar 4m")
def check_g_sylow2_remark(wb: Workbench) -> Outcome:
    q, m = wb.ctx.q, wb.ctx.m
    if q % 4 != 3 or m % 2 == 0:
        raise CheckSkipped(f"solo aplica con q ≡ 3 (mod 4) y m impar (q = {q}, m = {m})")
    probe = structure_probe(wb.G)
    ok = (not probe.sylow2_cyclic) and probe.unique_involution
    larger = [k for k in probe.order4_normalizers if k > 4 * m]
    return ok, [
        f"Sylow-2 de orden {probe.sylow2_order}, cíclico = {probe.sylow2_cyclic}",
        f"involuciones = {probe.involution_count}",
        f"normalizadores de subgrupos de orden 4: {list(probe.order4_normalizers)}; "
        f"mayores que 4m = {4 * m}: {len(larger)}",
    ]


@register("G.transitive", "G actúa transitivamente sobre Ω exactamente cuando q ≡ 3 (mod 4)")
def check_g_transitive(wb: Workbench) -> Outcome:
    qm = wb.ctx.q ** wb.ctx.m
    expected = wb.ctx.q % 4 == 3
    orbits = spread_orbits(wb.G, wb.spread)
    observed = len(orbits) == 1
    sizes = [len(o) for o in orbits]
    halves = observed or all(k == (qm + 1) // 2 for k in sizes)
    return observed == expected and halves, [
        f"esperado = {expected}, observado = {observed}",
        f"tamaños de órbita = {sizes}",
    ]


@register("spread.sl2_transitive", "SL(2,q^m) actúa por isometrías y de forma doblemente transitiva sobre Ω")
def check_sl2_transitive(wb: Workbench) -> Outcome:
    ctx = wb.ctx
    qm = ctx.q ** ctx.m
    H = build_sl2(ctx, wb.caps.max_group_order)
    expected = qm * (qm * qm - 1)
    isometries = bool(np.all(are_isometries(H.elements, wb.form)))
    perms, stabilizes = spread_permutations(wb.spread, H.elements)
    stable = bool(np.all(stabilizes))
    transitive = set(perms[:, 0].tolist()) == set(range(qm + 1))
    fixing_zero = perms[perms[:, 0] == 0]
    doubly = set(fixing_zero[:, 1].tolist()) == set(range(1, qm + 1))
    ok = H.order == expected and isometries and stable and transitive and doubly
    return ok, [
        f"|SL(2,{qm})| = {H.order} (esperado {expected})",
        f"isometrías = {isometries}, estabiliza Ω = {stable}",
        f"transitivo = {transitive}, doblemente transitivo = {doubly}",
    ]


# --- primos de Zsigmondy ---

@register("zsig.irreducible", "un elemento de orden primo de Zsigmondy r tiene polinomio mínimo irreducible de grado n")
def check_zsig_irreducible(wb: Workbench) -> Outcome:
    ok, witnesses = True, []
    for r in _require_zsigmondy(wb):
        sigma, scope = wb.zsigmondy_element(r)
        poly = minimal_polynomial(wb.scalars, sigma)
        irreducible = is_irreducible(wb.ctx, poly)
        ok &= irreducible and degree(poly) == wb.ctx.n
        witnesses.append(f"r = {r} ({scope}): polinomio mínimo {format_poly(poly)}, irreducible = {irreducible}")
    return ok, witnesses


@register("zsig.commutant", "C(σ) = P(σ): dim C(σ) = grado del polinomio mínimo = n")
def check_zsig_commutant(wb: Workbench) -> Outcome:
    ok, witnesses = True, []
    for r in _require_zsigmondy(wb):
        sigma, scope = wb.zsigmondy_element(r)
        dim = commutant_dimension(wb.scalars, sigma)
        deg = degree(minimal_polynomial(wb.scalars, sigma))
        ok &= dim == deg == wb.ctx.n
        witnesses.append(f"r = {r} ({scope}): dim C(σ) = {dim}, grado = {deg}, n = {wb.ctx.n}")
    return ok, witnesses


@register("sp.centralizer", "C_S(R) es cíclico de orden q^m+1")
def check_sp_centralizer(wb: Workbench) -> Outcome:
    primes = _require_zsigmondy(wb)
    sp = wb.sp
    qm = wb.ctx.q ** wb.ctx.m
    ok, witnesses = True, []
    for r in primes:
        C = centralizer_in(sp, sylow(sp, r))
        cyclic = C.is_cyclic()
        ok &= C.order == qm + 1 and cyclic
        witnesses.append(f"r = {r}: |C_S(R)| = {C.order} (esperado {qm + 1}), cíclico = {cyclic}")
    return ok, witnesses


@register("sp.normalizer", "N_S(R) tiene orden 2m(q^m+1) y N_S(R)/C_S(R) es cíclico de orden que divide a 2m")
def check_sp_normalizer(wb: Workbench) -> Outcome:
    primes = _require_zsigmondy(wb)
    sp = wb.sp
    n, qm = wb.ctx.n, wb.ctx.q ** wb.ctx.m
    ok, witnesses = True, []
    for r in primes:
        R = sylow(sp, r)
        C = centralizer_in(sp, R)
        N = normalizer_in(sp, R)
        index = N.order // C.order
        ok &= N.order == n * (qm + 1) and n % index == 0
        witnesses.append(
            f"r = {r}: |N_S(R)| = {N.order} (esperado {n * (qm + 1)}), |N/C| = {index} divide a {n}"
        )
    return ok, witnesses


# --- σ con σ² = -I ---

def _sample(wb: Workbench, indices: np.ndarray) -> np.ndarray:
    size = min(wb.caps.sample_size, len(indices))
    chosen = wb.rng().choice(len(indices), size=size, replace=False)
    return indices[np.sort(chosen)]


def _random_vector(wb: Workbench, rng: np.random.Generator) -> np.ndarray:
    while True:
        v = rng.integers(0, wb.ctx.q, size=wb.ctx.n)
        if np.any(v):
            return v.astype(np.int64)


@register("eig.decompose", "U = U_i ⊕ U_{-i} con ambos sumandos totalmente isótropos (σ² = -I)")
def check_eig_decompose(wb: Workbench) -> Outcome:
    i4 = _require_q1(wb)
    s, n = wb.scalars, wb.ctx.n
    group, scope = wb.symplectic_scope()
    roots = wb.minus_identity_roots(group)
    if len(roots) == 0:
        return False, [f"{scope}: no hay σ con σ² = -I"]
    rng = wb.rng()
    minus_i4 = int(s.neg(i4))
    for idx in _sample(wb, roots):
        sigma = group.elements[idx]
        plus, minus = eigenspace(s, sigma, i4), eigenspace(s, sigma, minus_i4)
        direct = plus.dim + minus.dim == n and subspace_sum(s, plus, minus).dim == n
        isotropic = is_totally_isotropic(plus, wb.form) and is_totally_isotropic(minus, wb.form)
        v = _random_vector(wb, rng)
        U = rref_subspace(s, [v, s.matmul(sigma, v[:, None])[:, 0]], n)
        U_plus, U_minus = intersect(s, U, plus), intersect(s, U, minus)
        split = U_plus.dim + U_minus.dim == U.dim
        if not (direct and isotropic and split):
            return False, [
                f"σ = {_matrix(sigma)}: dim V_i = {plus.dim}, dim V_-i = {minus.dim}, "
                f"isótropos = {isotropic}, U = {U!r} se descompone = {split}"
            ]
    return True, [f"alcance: {scope}; {min(wb.caps.sample_size, len(roots))} σ muestreados de {len(roots)} con σ² = -I"]


@register("eig.dims", "dim V_i = dim V_-i = m; dim X_i = dim Y_-i; si |Ω_σ| > 2, m es par y dim Z_i = m/2")
def check_eig_dims(wb: Workbench) -> Outcome:
    i4 = _require_q1(wb)
    s, m = wb.scalars, wb.ctx.m
    minus_i4 = int(s.neg(i4))
    group, scope = wb.spread_stabilizer_scope
    roots = wb.minus_identity_roots(group)
    if len(roots) == 0:
        return False, [f"{scope}: no hay σ con σ² = -I"]
    for idx in _sample(wb, roots):
        sigma = group.elements[idx]
        plus, minus = eigenspace(s, sigma, i4), eigenspace(s, sigma, minus_i4)
        if plus.dim != m or minus.dim != m:
            return False, [f"σ = {_matrix(sigma)}: dim V_i = {plus.dim}, dim V_-i = {minus.dim}, m = {m}"]
        fixed = sorted(fixed_members(sigma, wb.spread))
        dims_plus = {i: intersect(s, wb.spread.members[i], plus).dim for i in fixed}
        dims_minus = {i: intersect(s, wb.spread.members[i], minus).dim for i in fixed}
        for x in fixed:
            for y in fixed:
                if x != y and dims_plus[x] != dims_minus[y]:
                    return False, [f"σ = {_matrix(sigma)}: dim X_i = {dims_plus[x]} ≠ dim Y_-i = {dims_minus[y]} (X = {x}, Y = {y})"]
        if len(fixed) > 2 and (m % 2 or any(d != m // 2 for d in dims_plus.values())):
            return False, [f"σ = {_matrix(sigma)}: |Ω_σ| = {len(fixed)}, dimensiones Z_i = {list(dims_plus.values())}"]
    return True, [f"alcance: {scope}; {min(wb.caps.sample_size, len(roots))} σ muestreados de {len(roots)}"]


@register("fix.count", "si σ² = -I estabiliza Ω, entonces |Ω_σ| = 2, o m es par y |Ω_σ| = q^{m/2}+1")
def check_fix_count(wb: Workbench) -> Outcome:
    _require_q1(wb)
    q, m = wb.ctx.q, wb.ctx.m
    group, scope = wb.spread_stabilizer_scope
    roots = wb.minus_identity_roots(group)
    if len(roots) == 0:
        return False, [f"{scope}: no hay σ con σ² = -I"]
    perms, stabilizes = spread_permutations(wb.spread, group.elements[roots])
    counts = np.sum(perms == np.arange(perms.shape[1]), axis=1)[stabilizes]
    allowed = {2} | ({q ** (m // 2) + 1} if m % 2 == 0 else set())
    histogram = {int(k): int(v) for k, v in zip(*np.unique(counts, return_counts=True))}
    ok = len(counts) > 0 and set(histogram) <= allowed
    return ok, [
        f"alcance: {scope}; {len(counts)} σ con σ² = -I que estabilizan Ω",
        f"|Ω_σ| observados = {histogram}; permitidos = {sorted(allowed)}",
    ]


# --- casos excepcionales ---

@register("exception.q5", "para q = 5 el SL(2,3) de orden 24 actúa transitivamente sobre Ω; ningún subgrupo "
                          "resoluble propio de orden no divisible por 24 lo hace")
def check_exception_q5(wb: Workbench) -> Outcome:
    if wb.ctx.q != 5 or wb.ctx.m != 1:
        raise CheckSkipped("solo aplica a q = 5, m = 1")
    sp, spread = wb.sp, wb.spread
    budget = wb.caps.max_subgroup_search
    candidates = find_subgroups_of_order(sp, 24, budget)
    ok, witnesses = len(candidates) > 0, [f"subgrupos de orden 24 en Sp(2,5): {len(candidates)}"]
    for k, H in enumerate(candidates):
        orders = H.element_orders
        P = sylow(H, 2)
        signature = (
            is_solvable(H)
            and int(np.sum(orders == 2)) == 1
            and P.order == 8
            and not P.is_cyclic()
        )
        transitive = len(spread_orbits(H, spread)) == 1
        stab = stabilizer(H, spread.members[0]).order
        ok &= signature and transitive and stab == 4
        witnesses.append(f"H{k}: firma SL(2,3) = {signature}, transitivo = {transitive}, estabilizador = {stab}")
    offenders = [
        H.order for H in all_subgroups(sp, budget)
        if H.order < sp.order and H.order % 24 and len(spread_orbits(H, spread)) == 1 and is_solvable(H)
    ]
    ok &= not offenders
    witnesses.append(f"subgrupos resolubles propios transitivos de orden no divisible por 24: {offenders}")
    return ok, witnesses


@register("fermat.flag", "los primos impares de q^{2^b}+1 son de Zsigmondy para q^{2^{b+1}}-1; "
                         "se marca la configuración q^{2^b}+1 = 2r^t con r = 2^{b+1}+1 de Fermat")
def check_fermat_flag(wb: Workbench) -> Outcome:
    m = wb.ctx.m
    if m & (m - 1):
        raise CheckSkipped(f"m = {m} no es potencia de 2")
    b = m.bit_length() - 1
    report = fermat_exception_check(wb.ctx.q, b)
    return report.all_zsigmondy, report.summary()
