"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 resource limit or I/O failure.
"""
import csv
import json
import sys
from typing import List, Sequence

import click
from . import __version__, _config, exact, kernels, stats
from .core import Alphabet, rle
from .errors import DomainError, OutOfRangeError, ResourceLimitError, SpecSyntaxError
from .sources import parse_spec

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_RESOURCE = 0, 1, 2, 3

CONTEXT = {"max_content_width": 100, "terminal_width": 100, "help_option_names": ["-h", "--help"]}

CSV_HEADER = ("position", "count_lo", "count_hi", "density_lo")


def emit_csv(trace: stats.DensityTrace, path) -> None:
    """Write ``trace`` as CSV; ``path`` may be a file path, ``-`` or an open text stream."""
    if hasattr(path, "write"):
        _write_rows(trace, path)
    elif str(path) == "-":
        _write_rows(trace, sys.stdout)
    else:
        with open(path, "w", newline="") as fh:
            _write_rows(trace, fh)


def _write_rows(trace, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for cp in trace.checkpoints:
        w.writerow((cp.position, cp.count_lo, cp.count_hi, f"{cp.density_lo:.12g}"))


def read_csv(path) -> List[tuple]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise DomainError(f"{path}: not a density trace")
    return [(int(a), int(b), int(c), float(d)) for a, b, c, d in rows[1:]]


def _trace_rows(trace):
    return [cp._asdict() for cp in trace.checkpoints]


def _meta(spec_text, seed):
    return {"spec": spec_text, "seed": seed, "version": __version__}


def _spec(text):
    return parse_spec(text)


def _int_list(text) -> List[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None


def _format_letters(letters: Sequence[int]) -> str:
    if all(x < 10 for x in letters):
        return "".join(map(str, letters))
    return ",".join(map(str, letters))


def _threads_option(f):
    return click.option("--threads", type=click.IntRange(min=1), default=None, envvar="RANDKOL_THREADS",
                        help="Worker threads for Monte Carlo trials (env RANDKOL_THREADS).")(f)


@click.group(context_settings=CONTEXT)
@click.version_option(__version__, prog_name="randkol")
def main():
    """Sequences directed by arbitrary directing sequences: generation, exact letter
    probabilities with enumeration oracles, and seeded density estimation."""


@main.command()
@click.option("--spec", "spec_text", required=True, help="Source descriptor, e.g. classic:1,2.")
@click.option("--length", type=click.IntRange(min=0), required=True, help="Number of letters.")
@click.option("--seed", type=click.IntRange(min=0, max=2**64 - 1), default=0, show_default=True)
@click.option("--runs", "mode", flag_value="runs", help="Print (letter,length) runs.")
@click.option("--letters", "mode", flag_value="letters", default=True, help="Print the letters (default).")
@click.option("--json", "as_json", is_flag=True, help="Print a JSON document instead.")
def generate(spec_text, length, seed, mode, as_json):
    """Print a prefix of the directed sequence."""
    spec = _spec(spec_text)
    if length > _config.PENDING_BUDGET_BYTES:
        raise ResourceLimitError(f"a prefix of {length} letters exceeds the memory budget")
    src = kernels.KernelSource.from_spec(spec)
    letters = kernels.prefix(src, kernels.derive_seed(seed, 0), length).tolist()
    runs = [list(r) for r in rle(letters).runs] if (mode == "runs" and letters) else None
    if as_json:
        doc = _meta(spec_text, seed) | {"length": length, "letters": _format_letters(letters)}
        if runs is not None:
            doc["runs"] = runs
        click.echo(json.dumps(doc))
    elif runs is not None:
        click.echo(" ".join(f"({a},{n})" for a, n in runs))
    else:
        click.echo(_format_letters(letters))


@main.command()
@click.option("--spec", "spec_text", required=True, help="Source descriptor.")
@click.option("--length", type=click.IntRange(min=1), required=True, help="Prefix length per trial.")
@click.option("--trials", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--seed", type=click.IntRange(min=0, max=2**64 - 1), default=0, show_default=True)
@click.option("--csv", "csv_path", required=True, help="Trace of trial 0 as CSV ('-' for stdout).")
@click.option("--checkpoints", default=None, help="Comma-separated positions (default: powers of two).")
@_threads_option
@click.option("--json", "as_json", is_flag=True, help="Also print a JSON summary.")
def density(spec_text, length, trials, seed, csv_path, checkpoints, threads, as_json):
    """Letter-density trace of one realization and the Monte Carlo mean over trials."""
    spec = _spec(spec_text)
    cps = _int_list(checkpoints) if checkpoints else None
    trace = stats.density_trace(spec, length, cps, kernels.derive_seed(seed, 0))
    emit_csv(trace, csv_path)
    result = stats.mc_density(spec, length, trials, seed, threads)
    if as_json:
        doc = _meta(spec_text, seed) | {
            "length": length, "trials": trials, "mean": result.mean, "stderr": result.stderr,
            "checkpoints": _trace_rows(trace),
        }
        click.echo(json.dumps(doc))
    elif csv_path != "-":
        click.echo(f"trials={trials} mean={result.mean!r} stderr={result.stderr!r}")


@main.command("exact")
@click.option("--mode", type=click.Choice(["iid", "markov"]), required=True)
@click.option("--p", "p", type=float, required=True, help="P(T = lo) for iid, switch probability for markov.")
@click.option("--alphabet", default="1,2", show_default=True, help="Two letters a,b.")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Position (1-indexed).")
@click.option("--start", type=int, default=None, help="Markov start letter (default: lo).")
@click.option("--oracle", is_flag=True, help="Also run the brute-force enumeration oracle.")
@click.option("--json", "as_json", is_flag=True)
def exact_cmd(mode, p, alphabet, n, start, oracle, as_json):
    """Exact P(X_n = lo): closed form and/or enumeration oracle."""
    letters = _int_list(alphabet)
    if len(letters) != 2:
        raise click.BadParameter("expected two letters", param_hint="--alphabet")
    al = Alphabet.of(*letters)
    out = {}
    if mode == "iid":
        try:
            out["closed"] = exact.p_xn_closed(p, n, al)
        except OutOfRangeError:
            if not oracle:
                raise
            out["closed"] = "out-of-range"
        if oracle:
            out["oracle"] = exact.p_xn_enum(p, n, al)
    else:
        if not 0 < p < 1:
            raise DomainError(f"probability must lie in ]0,1[, got {p!r}")
        out["limit"] = 0.5
        if oracle:
            out["oracle"] = exact.markov_xn_enum(p, n, al, start)
    if as_json:
        click.echo(json.dumps({"mode": mode, "p": p, "alphabet": list(al), "n": n} | out))
    else:
        click.echo(" ".join(f"{k}={v}" for k, v in out.items()))


@main.command()
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--list", "as_list", is_flag=True, help="List every tuple with its class index.")
def snk(n, as_list):
    """Sizes of the classes S_{n,k} partitioning {1,2}^n."""
    if as_list:
        for T, k in exact.snk_members(n):
            click.echo(f"{','.join(map(str, T))} -> {k}")
        return
    table = exact.snk_partition(n)
    click.echo("k,size")
    for k, size in table.sizes.items():
        click.echo(f"{k},{size}")
    click.echo(f"total,{table.total}")


@main.command(short_help="Covariance of centered X_m and X_n under the i.i.d. law.")
@click.option("--p", "p", type=float, required=True)
@click.option("--m", "m", type=click.IntRange(min=1), required=True)
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--oracle", is_flag=True, help="Also compute the expectation by enumeration.")
def correlate(p, m, n, oracle):
    """E(centered X_m * centered X_n) under the i.i.d. law over {1,2}."""
    out = {"closed": exact.corr_closed(p, m, n)}
    if oracle:
        out["oracle"] = exact.corr_enum(p, m, n)
    click.echo(" ".join(f"{k}={v}" for k, v in out.items()))


@main.command()
@click.option("--length", type=click.IntRange(min=1), required=True, help="n: directing letters, and trace length.")
@click.option("--csv", "csv_path", required=True, help="Density trace of O as CSV ('-' for stdout).")
@click.option("--json", "as_json", is_flag=True)
def selfref(length, csv_path, as_json):
    """Self-referential construction: densities of 1 in T and O_T."""
    trace = stats.selfref_trace(length)
    emit_csv(trace, csv_path)
    d = stats.selfref_densities(length)
    fields = d._asdict()
    if as_json:
        fields = {k: (None if isinstance(v, float) and v != v else v) for k, v in fields.items()}
        click.echo(json.dumps(_meta("selfref", 0) | {"n": length} | fields
                              | {"checkpoints": _trace_rows(trace)}))
    elif csv_path != "-":
        lim = repr(d.limit_residual) if d.limit_defined else "undefined"
        click.echo(f"dT={d.dT!r} dO={d.dO!r} limit_residual={lim} balance_residual={d.balance_residual!r}")


@main.command()
@click.option("--fast", is_flag=True, help="Smaller instance sizes.")
def verify(fast):
    """Run the invariant checks of every module; non-zero exit iff any fails."""
    from .verify import run_checks

    failed = 0
    for name, ok, detail in run_checks(fast=fast):
        click.echo(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failed += not ok
    click.echo(f"{failed} failed")
    if failed:
        raise click.exceptions.Exit(EXIT_DOMAIN)


def run(argv=None) -> int:
    """Entry point returning the process exit code."""
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        rv = main.main(args=argv, prog_name="randkol", standalone_mode=False)
        return rv if isinstance(rv, int) else EXIT_OK
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort:
        return EXIT_USAGE
    except click.UsageError as e:
        e.show()
        if e.ctx is not None:
            click.echo(e.ctx.get_help(), err=True)
        return EXIT_USAGE
    except SpecSyntaxError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_USAGE
    except DomainError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_DOMAIN
    except (ResourceLimitError, OSError) as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_RESOURCE


def entry():  # pragma: no cover - console script
    sys.exit(run())
