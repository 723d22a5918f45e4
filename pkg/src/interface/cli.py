import argparse
import json
import logging
import sys
from pathlib import Path

from src.database.db_manager import ReportStore
from src.field.tower import ConstructionError, make_tower
from src.geometry.spread import build_spread, validate_spread
from src.geometry.spread_io import format_spread, read_spread, write_spread
from src.geometry.symplectic import gram_from_trace_form
from src.groups.matgroup import CapExceededError, structure_probe
from src.groups.model import build_metacyclic_group
from src.utils.settings import DEFAULT_MATRIX, LOG_FORMAT, Caps, load_caps, log_level
from src.verify.checks import CHECKS
from src.verify.report import exit_code, render_json
from src.verify.runner import run_all, run_check

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def load_matrix(path: str | Path) -> list[tuple[int, int, int]]:
    """
    Lee un archivo de parámetros: una terna `p a m` por línea, `#` inicia comentario.

    Raises:
        ValueError: Si una línea no es una terna de enteros.
    """
    triples = []
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3 or not all(f.isdigit() for f in fields):
            raise ValueError(f"{path}:{line_no}: se esperaba `p a m`, se leyó {raw!r}")
        triples.append(tuple(int(f) for f in fields))
    return triples


def _add_params(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--p", type=int, required=required, help="primo impar")
    parser.add_argument("--a", type=int, required=required, help="exponente, q = p^a")
    parser.add_argument("--m", type=int, required=required, help="V' tiene dimensión 2m sobre F_q")


def build_parser() -> argparse.ArgumentParser:
    # Opciones globales aceptadas antes o después del subcomando
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--max-group-order", type=int, help="tope de elementos de un grupo (200000)")
    common.add_argument("--max-subgroup-search", type=int, help="tope de |g| para buscar subgrupos (200)")
    common.add_argument("--json", action="store_true", help="salida JSON")
    common.add_argument("--log-level", choices=LOG_LEVELS, help="nivel de logging en stderr")

    parser = argparse.ArgumentParser(
        prog="spreads",
        parents=[common],
        description="Spreads simplécticos completos y el grupo metacíclico G = <π, ρ>.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    tower = sub.add_parser("tower", parents=[common], help="construye la torre de cuerpos")
    _add_params(tower)

    spread = sub.add_parser("spread", help="construye o valida spreads")
    spread_sub = spread.add_subparsers(dest="spread_command", required=True)
    build = spread_sub.add_parser("build", parents=[common], help="escribe el spread de reducción de cuerpo")
    _add_params(build)
    build.add_argument("--out", help="archivo de salida (por defecto, stdout)")
    validate = spread_sub.add_parser("validate", parents=[common], help="valida un archivo de spread")
    validate.add_argument("--in", dest="infile", required=True, help="archivo de spread")

    group = sub.add_parser("group", help="inspecciona G = <π, ρ>")
    group_sub = group.add_subparsers(dest="group_command", required=True)
    info = group_sub.add_parser("info", parents=[common], help="orden, histograma y estructura de G")
    _add_params(info)

    verify = sub.add_parser("verify", parents=[common], help="ejecuta comprobaciones")
    target = verify.add_mutually_exclusive_group(required=True)
    target.add_argument("--check", choices=list(CHECKS), help="identificador de la comprobación")
    target.add_argument("--all", action="store_true", help="todo el registro sobre la matriz de parámetros")
    _add_params(verify, required=False)
    verify.add_argument("--matrix", help="archivo con ternas `p a m`")
    verify.add_argument("--store", action="store_true", help="guarda la ejecución en la base de informes")
    verify.add_argument("--timings", action="store_true", help="incluye elapsed_ms en el JSON")
    return parser


def _coeffs(x) -> list[int]:
    return list(x.coeffs)


def cmd_tower(args, caps: Caps) -> int:
    ctx = make_tower(args.p, args.a, args.m, caps.field_size_cap)
    data = {
        "p": ctx.p, "a": ctx.a, "m": ctx.m, "q": ctx.q,
        "modulus": list(ctx.modulus),
        "omega": _coeffs(ctx.omega),
        "epsilon": _coeffs(ctx.epsilon),
        "lambda": _coeffs(ctx.lam),
        "mu": _coeffs(ctx.mu),
    }
    if getattr(args, "json", False):
        print(json.dumps(data, indent=2))
    else:
        print(f"F_{{{ctx.q}^{ctx.n}}} = F_{ctx.p}[x]/(módulo), {ctx.size} elementos")
        for name in ("modulus", "omega", "epsilon", "lambda", "mu"):
            print(f"{name:8} {tuple(data[name])}")
    return 0


def cmd_spread(args, caps: Caps) -> int:
    if args.spread_command == "build":
        ctx = make_tower(args.p, args.a, args.m, caps.field_size_cap)
        spread = build_spread(ctx)
        if args.out:
            write_spread(args.out, spread)
            print(f"Spread con {len(spread)} miembros escrito en {args.out}")
        else:
            print(format_spread(spread), end="")
        return 0
    spread = read_spread(args.infile, caps.field_size_cap)
    report = validate_spread(spread, gram_from_trace_form(spread.ctx))
    _print_reports([report.params], [report], getattr(args, "json", False), timings=False)
    return exit_code([report])


def cmd_group(args, caps: Caps) -> int:
    ctx = make_tower(args.p, args.a, args.m, caps.field_size_cap)
    G = build_metacyclic_group(ctx, caps.max_group_order)
    probe = structure_probe(G)
    if getattr(args, "json", False):
        print(json.dumps({
            "p": ctx.p, "a": ctx.a, "m": ctx.m,
            "order": probe.order,
            "order_histogram": {str(k): v for k, v in probe.order_histogram.items()},
            "involutions": probe.involution_count,
            "cyclic": probe.is_cyclic,
            "sylow2_order": probe.sylow2_order,
            "sylow2_cyclic": probe.sylow2_cyclic,
            "order4_normalizers": list(probe.order4_normalizers),
        }, indent=2))
    else:
        print(f"G = <π, ρ> para (p, a, m) = ({ctx.p}, {ctx.a}, {ctx.m})")
        for line in probe.summary():
            print(f"  {line}")
    return 0


def _print_reports(params, reports, as_json: bool, timings: bool) -> None:
    if as_json:
        print(render_json(params, reports, timings))
        return
    for report in reports:
        print(report.describe())
        for witness in report.witnesses:
            print(f"    {witness}")


def cmd_verify(args, caps: Caps) -> int:
    if args.all:
        params = load_matrix(args.matrix) if args.matrix else list(DEFAULT_MATRIX)
    else:
        if None in (args.p, args.a, args.m):
            raise ValueError("--check requiere --p, --a y --m")
        params = [(args.p, args.a, args.m)]
    ctxs = [make_tower(p, a, m, caps.field_size_cap) for p, a, m in params]
    if args.all:
        reports = run_all(ctxs, caps)
    else:
        reports = [run_check(args.check, ctxs[0], caps)]
    if args.store:
        run_id = ReportStore().add_run(reports)
        logging.info(f"Ejecución guardada con ID {run_id}")
    _print_reports(params, reports, getattr(args, "json", False), args.timings)
    return exit_code(reports)


HANDLERS = {
    "tower": cmd_tower,
    "spread": cmd_spread,
    "group": cmd_group,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    """
    Punto de entrada de la línea de comandos.

    Returns:
        int: 0 si todo pasa, 1 si alguna comprobación falla, 2 ante errores de uso o de construcción.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        logging.basicConfig(
            level=getattr(args, "log_level", log_level()),
            format=LOG_FORMAT,
            stream=sys.stderr,
            force=True,
        )
        caps = load_caps().with_overrides(
            max_group_order=getattr(args, "max_group_order", None),
            max_subgroup_search=getattr(args, "max_subgroup_search", None),
        )
        return HANDLERS[args.command](args, caps)
    except (ConstructionError, CapExceededError, ValueError, OSError) as exc:
        logging.debug(f"Error de construcción o de uso: {exc!r}")
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
