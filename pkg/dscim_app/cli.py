# -*- coding: utf-8 -*-
"""
cli.py
Linha de comando para experimentos reprodutíveis.

Comandos:
  simulate     ativações × pesos → psum estimado / exato por saída
  sweep        varredura de comprimento (N) ou de esparsidade
  seedsearch   busca de PRNG + sementes
  saturation   curva de saturação do OR (analítica + Monte-Carlo)
  perf         modelo de ciclos / densidade
  errormodel   exporta a distribuição empírica de erro (CSV + JSON)

Códigos de saída: 0 ok, 2 entrada inválida, 3 configuração inválida, 4 invariante violado.
Threads: variável de ambiente DSCIM_THREADS.
"""

from __future__ import annotations

import sys
import logging
import argparse
from pathlib import Path
from typing import Dict, List, Optional

from .core.analysis import (
    Estimator, export_error_model, length_sweep, rmse_eval, saturation_curve,
    seed_search, simulation_frame, sparsity_sweep, sweep_frame,
)
from .core.errors import DscimError
from .core.io_files import read_activations, read_json, read_weights, write_json, write_table
from .core.perf import WorkloadSpec, latency_model
from .core.run_config import OUTPUT_FORMATS, RunConfig, load_run_config

logger = logging.getLogger("dscim_app")

DEFAULT_WORKLOAD = WorkloadSpec(output_count=4096)


def _run_config(args: argparse.Namespace, **fields) -> RunConfig:
    data = read_json(args.config) if getattr(args, "config", None) else {}
    return load_run_config(
        data,
        mode=getattr(args, "mode", None),
        output_format=getattr(args, "format", None),
        master_seed=getattr(args, "seed", None),
        trials=getattr(args, "trials", None),
        **fields,
    )


def _embedded(rc: RunConfig, **extra) -> Dict:
    """Configuração resolvida que vai dentro de cada arquivo de saída."""
    return {"mode": rc.mode.value, "macro": rc.macro.to_dict(), "config_hash": rc.macro.digest(),
            "master_seed": rc.master_seed, **extra}


def _meta(command: str, rc: RunConfig) -> Dict:
    return {"command": command, "warnings": rc.warnings}


# ---------------------------------------------------------
# Comandos
# ---------------------------------------------------------
def cmd_simulate(args: argparse.Namespace) -> int:
    rc = _run_config(args)
    cfg = rc.macro
    A = read_activations(args.activations, cfg.rows)
    W = read_weights(args.weights, cfg.rows)
    df = simulation_frame(cfg, A, W)
    write_table(df, args.out, _embedded(rc), rc.output_format, _meta("simulate", rc))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    rc = _run_config(args)
    est = Estimator(args.estimator)
    if args.kind == "length":
        points = length_sweep(rc.macro, rc.lengths, rc.distribution, rc.trials, rc.master_seed,
                              retune=not rc.prng_pinned)
        df = sweep_frame(points, "N")
    else:
        df = sweep_frame(sparsity_sweep(rc.macro, rc.sparsity_grid, rc.trials, rc.master_seed,
                                        rc.distribution, estimator=est), "p_zero")
    df.insert(0, "estimator", est.value if args.kind == "sparsity" else Estimator.DSCIM.value)
    embedded = _embedded(rc, sweep=args.kind, distribution=rc.distribution.to_dict(), trials=rc.trials,
                         tuned_prng=args.kind == "length" and not rc.prng_pinned)
    write_table(df, args.out, embedded, rc.output_format, _meta("sweep", rc))
    return 0


def cmd_seedsearch(args: argparse.Namespace) -> int:
    rc = _run_config(args, budget=args.budget)
    res = seed_search(rc.macro, lengths=rc.lengths, budget=rc.budget, trials=rc.trials,
                      master_seed=rc.master_seed, full=args.full)
    body = {"config": _embedded(rc, budget=rc.budget, trials=rc.trials), "result": res.to_dict()}
    write_json(body, args.out, _meta("seedsearch", rc))
    return 0


def cmd_saturation_curve(args: argparse.Namespace) -> int:
    rc = _run_config(args)
    n_list = args.n or rc.sat_n
    p_grid = args.p or rc.sat_p
    df = saturation_curve(n_list, p_grid, trials=rc.trials, N=args.cycles, master_seed=rc.master_seed)
    embedded = _embedded(rc, n=list(n_list), p=list(p_grid), cycles=args.cycles, trials=rc.trials)
    write_table(df, args.out, embedded, rc.output_format, _meta("saturation", rc))
    return 0


def cmd_perf(args: argparse.Namespace) -> int:
    rc = _run_config(args)
    work = rc.workload or DEFAULT_WORKLOAD
    if args.workload:
        work = WorkloadSpec.from_dict(read_json(args.workload))
    report = latency_model(work, rc.macro)
    body = {"config": _embedded(rc), "workload": work.__dict__, "report": report.to_dict()}
    write_json(body, args.out, _meta("perf", rc))
    return 0


def cmd_errormodel(args: argparse.Namespace) -> int:
    rc = _run_config(args)
    stats = rmse_eval(rc.macro, rc.distribution, rc.trials, rc.master_seed)
    export_error_model(stats, args.out, rc.macro, rc.distribution)
    return 0


# ---------------------------------------------------------
# Parser
# ---------------------------------------------------------
def _common(p: argparse.ArgumentParser, trials: bool = True) -> None:
    p.add_argument("--config", type=str, default=None, help="arquivo JSON de configuração")
    p.add_argument("--out", type=str, required=True, help="arquivo de saída")
    p.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="formato da saída tabular")
    p.add_argument("--seed", type=int, default=None, help="master seed")
    p.add_argument("--mode", choices=["dscim1", "dscim2", "custom"], default=None)
    if trials:
        p.add_argument("--trials", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dscim", description="Simulador comportamental DS-CIM")
    parser.add_argument("-v", "--verbose", action="store_true", help="log em nível INFO")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simula o macro sobre matrizes CSV")
    _common(p, trials=False)
    p.add_argument("--activations", required=True)
    p.add_argument("--weights", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="varredura de comprimento ou esparsidade")
    p.add_argument("kind", choices=["length", "sparsity"])
    _common(p)
    p.add_argument("--estimator", choices=[e.value for e in Estimator], default=Estimator.DSCIM.value,
                   help="naive = OR-MAC com PRNG independente por linha (só esparsidade)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("seedsearch", help="busca de PRNG / sementes")
    _common(p)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--full", action="store_true", help="todas as 255 sementes por polinômio")
    p.set_defaults(func=cmd_seedsearch)

    p = sub.add_parser("saturation", help="curva de saturação do OR")
    _common(p)
    p.add_argument("--n", type=int, nargs="+", default=None, help="fan-ins do OR")
    p.add_argument("--p", type=float, nargs="+", default=None, help="probabilidades por entrada")
    p.add_argument("--cycles", type=int, default=256, help="ciclos por tentativa")
    p.set_defaults(func=cmd_saturation_curve)

    p = sub.add_parser("perf", help="modelo de latência / densidade")
    _common(p, trials=False)
    p.add_argument("--workload", type=str, default=None, help="JSON com output_count, vector_len, weight_columns")
    p.set_defaults(func=cmd_perf)

    p = sub.add_parser("errormodel", help="exporta a distribuição de erro")
    _common(p)
    p.set_defaults(func=cmd_errormodel)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        code = args.func(args)
        logger.info(f"{args.command} → {args.out}")
        return code
    except DscimError as e:
        print(f"erro: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
