"""Command-line interface: ``idcodes <group> <command>``."""

from __future__ import annotations

import csv
import json
import sys
import warnings

import click

from . import analysis, capacity, concat, protocol, rs
from .field import format_element, make_field, parse_element


def _echo_json(obj) -> None:
    click.echo(json.dumps(obj, indent=2, default=str))


@click.group()
def main() -> None:
    """Identification codes from concatenated Reed-Solomon codes."""
    warnings.simplefilter("ignore", UserWarning)


# -- field ------------------------------------------------------------------


@main.group()
def field() -> None:
    """Finite fields."""


@field.command("info")
@click.option("--p", type=int, required=True)
@click.option("--m", type=int, default=1, show_default=True)
def field_info(p: int, m: int) -> None:
    """Print the field descriptor as JSON."""
    click.echo(make_field(p, m).to_json())


@field.command("element")
@click.option("--p", type=int, required=True)
@click.option("--m", type=int, default=1, show_default=True)
@click.argument("index", type=int)
def field_element(p: int, m: int, index: int) -> None:
    """Print the element with the given discrete-log index."""
    f = make_field(p, m)
    click.echo(format_element(f.from_index(index)))


# -- rs ---------------------------------------------------------------------


def _rs_options(fn):
    for opt in reversed(
        [
            click.option("--p", type=int, required=True, help="field characteristic"),
            click.option("--m", type=int, default=1, show_default=True, help="extension degree"),
            click.option("--n", type=int, default=None, help="blocklength (default: field size)"),
            click.option("--k", type=int, required=True, help="message length"),
        ]
    ):
        fn = opt(fn)
    return fn


def _rs_params(p, m, n, k) -> rs.RsParams:
    f = make_field(p, m)
    return rs.RsParams(f, f.order if n is None else n, k)


def _message(params: rs.RsParams, symbols) -> list:
    text = " ".join(symbols).split()
    return [parse_element(params.field, s) for s in text]


@main.group("rs")
def rs_group() -> None:
    """Single Reed-Solomon codes."""


@rs_group.command("eval")
@_rs_options
@click.option("--j", "locator", type=int, required=True, help="locator index")
@click.argument("message", nargs=-1, required=True)
def rs_eval(p, m, n, k, locator, message) -> None:
    """Evaluate one codeword symbol. MESSAGE: elements as c0,c1,... or a^e."""
    params = _rs_params(p, m, n, k)
    click.echo(format_element(rs.evaluate_tag(params, _message(params, message), locator)))


@rs_group.command("codeword")
@_rs_options
@click.argument("message", nargs=-1, required=True)
def rs_codeword(p, m, n, k, message) -> None:
    params = _rs_params(p, m, n, k)
    click.echo(" ".join(format_element(e) for e in rs.codeword(params, _message(params, message))))


@rs_group.command("genmatrix")
@_rs_options
def rs_genmatrix(p, m, n, k) -> None:
    params = _rs_params(p, m, n, k)
    for row in rs.generator_matrix(params):
        click.echo(" ".join(format_element(e) for e in row))


@rs_group.command("mindist")
@_rs_options
def rs_mindist(p, m, n, k) -> None:
    params = _rs_params(p, m, n, k)
    click.echo(rs.min_distance_bruteforce(params))


# -- id ---------------------------------------------------------------------


def _code_options(fn):
    for opt in reversed(
        [
            click.option("--q", type=int, required=True),
            click.option("--k", type=int, required=True),
            click.option("--delta", type=int, required=True),
        ]
    ):
        fn = opt(fn)
    return fn


def _identity_options(fn):
    for opt in reversed(
        [
            click.option("--identity-int", type=int, default=None),
            click.option("--seed", type=int, default=None),
            click.option("--identity-file", type=click.Path(exists=True, dir_okay=False), default=None),
        ]
    ):
        fn = opt(fn)
    return fn


def _identity(params, identity_int, seed, identity_file) -> concat.Identity:
    given = [x is not None for x in (identity_int, seed, identity_file)]
    if sum(given) != 1:
        raise click.UsageError("give exactly one of --identity-int, --seed, --identity-file")
    if identity_int is not None:
        return concat.identity_from_integer(params, identity_int)
    if seed is not None:
        return concat.identity_from_seed(params, seed)
    ident = concat.read_identity(identity_file)
    if ident.params != params:
        raise click.UsageError("identity file was written for different parameters")
    return ident


@main.group("id")
def id_group() -> None:
    """Concatenated RS identification codes."""


@id_group.command("params")
@_code_options
def id_params(q, k, delta) -> None:
    params = concat.derive_params(q, k, delta)
    bound = concat.false_id_bound(params)
    _echo_json(
        {
            "q": q, "k": k, "delta": delta,
            "n_c": params.n_c, "k_c": params.k_c, "d_c": params.d_c,
            "identities": {"base": params.identities[0], "exponent": params.identities[1]},
            "log10_identities": params.log10_identities,
            "lambda2_bound": str(bound), "lambda2_bound_float": float(bound),
            "outer_field": params.outer_field.to_dict(),
        }
    )


@id_group.command("tag")
@_code_options
@_identity_options
@click.option("--j", type=int, required=True, help="randomness in [0, q^(k+1))")
def id_tag(q, k, delta, identity_int, seed, identity_file, j) -> None:
    params = concat.derive_params(q, k, delta)
    ident = _identity(params, identity_int, seed, identity_file)
    click.echo(json.dumps({"j": j, "t": int(concat.tag(params, ident, j))}))


@id_group.command("codeword")
@_code_options
@_identity_options
def id_codeword(q, k, delta, identity_int, seed, identity_file) -> None:
    """Whole tagging function as space-separated tags (desk scale only)."""
    params = concat.derive_params(q, k, delta)
    ident = _identity(params, identity_int, seed, identity_file)
    click.echo(" ".join(str(t) for t in concat.codeword_by_tags(params, ident)))


@id_group.command("export")
@_code_options
@_identity_options
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def id_export(q, k, delta, identity_int, seed, identity_file, out) -> None:
    """Write an identity file (header line, then one coefficient index per line)."""
    params = concat.derive_params(q, k, delta)
    concat.write_identity(out, _identity(params, identity_int, seed, identity_file))


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


@id_group.command("check-capacity")
@click.option("--family", type=click.Choice(["rs2", "rs"]), default="rs2", show_default=True)
@click.option("--qs", required=True, help="comma-separated field sizes")
@click.option("--k", type=int, default=3, show_default=True)
@click.option("--delta", type=int, default=2, show_default=True)
def id_check_capacity(family, qs, k, delta) -> None:
    qlist = _int_list(qs)
    pts = capacity.concat_family(qlist, k, delta) if family == "rs2" else capacity.single_rs_family(qlist, k)
    _echo_json(capacity.capacity_conditions(pts).to_dict())


# -- sim --------------------------------------------------------------------


def _sim(runner, q, k, delta, trials, seed, workers, csv_path) -> None:
    params = concat.derive_params(q, k, delta)
    report = runner(params, trials, seed, workers=workers)
    d = report.to_dict()
    _echo_json(d)
    if csv_path:
        with open(csv_path, "a", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            if fh.tell() == 0:
                w.writerow(list(d))
            w.writerow(list(d.values()))


@main.group()
def sim() -> None:
    """Monte Carlo false-identification experiments."""


for _name, _runner, _help in (
    ("fixed", protocol.run_fixed_randomness_experiment, "Fixed identity and randomness; random other identities."),
    ("average", protocol.run_average_fa_experiment, "Fresh sender, verifier and randomness every trial."),
):

    def _make(runner):
        @_code_options
        @click.option("--trials", type=int, default=1000, show_default=True)
        @click.option("--seed", type=int, default=0, show_default=True)
        @click.option("--workers", type=int, default=1, show_default=True)
        @click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="append a CSV row")
        def cmd(q, k, delta, trials, seed, workers, csv_path):
            _sim(runner, q, k, delta, trials, seed, workers, csv_path)

        return cmd

    sim.command(_name, help=_help)(_make(_runner))


# -- bench / fig / util -----------------------------------------------------


@main.group()
def bench() -> None:
    """Timing."""


@bench.command("tag")
@_code_options
@click.option("--repetitions", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def bench_tag_cmd(q, k, delta, repetitions, seed) -> None:
    rec = analysis.bench_tag(q, k, delta, repetitions, seed)
    _echo_json(rec.__dict__)


@main.group()
def fig() -> None:
    """Figure data as CSV."""


@fig.command("emit")
@click.option("--figure", type=click.Choice(sorted(analysis.FIGURES)), required=True)
@click.option("--qs", default=None, help="comma-separated q values (with --k/--delta)")
@click.option("--k", type=int, default=3, show_default=True)
@click.option("--delta", type=int, default=2, show_default=True)
@click.option("--params", "param_text", default=None, help='explicit sets, e.g. "3,2,1;5,3,2"')
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--repetitions", type=int, default=3, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def fig_emit(figure, qs, k, delta, param_text, trials, seed, repetitions, out) -> None:
    plist: list[tuple[int, int, int]] = []
    if param_text:
        plist += [tuple(_int_list(chunk)) for chunk in param_text.split(";") if chunk.strip()]
    if qs:
        plist += [(q, k, delta) for q in _int_list(qs)]
    text = analysis.emit_figure_data(figure, plist, out, trials=trials, seed=seed, repetitions=repetitions)
    if out is None:
        sys.stdout.write(text)


@main.group()
def util() -> None:
    """Helpers."""


@util.command("nearest-prime")
@click.argument("n", type=int)
def util_nearest_prime(n: int) -> None:
    click.echo(analysis.nearest_prime(n))


if __name__ == "__main__":
    main()
