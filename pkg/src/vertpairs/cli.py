"""Command-line client.

Every command builds a request model and hands it to the service layer --
in-process by default, or over HTTP when --server is given.  The CLI itself
only parses flags and renders responses, so its output is byte-identical
for identical flags either way.

Exit codes: 0 success, 1 verification/computation failure, 2 flag errors.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click
from fastapi import HTTPException

from .service.app import (
    compute_appendix,
    compute_gw,
    compute_hurwitz,
    compute_matrices,
    compute_mp_check,
    compute_pairs,
    compute_verify,
)
from .service.models import (
    AppendixRequest,
    AppendixResponse,
    GwRequest,
    GwResponse,
    HurwitzRequest,
    HurwitzResponse,
    InsertionSpec,
    MatricesRequest,
    MatricesResponse,
    MpCheckRequest,
    MpCheckResponse,
    PairsRequest,
    PairsResponse,
    VerifyRequest,
    VerifyResponse,
)

_ENDPOINTS = {
    "pairs": (compute_pairs, PairsResponse, "/pairs"),
    "gw": (compute_gw, GwResponse, "/gw"),
    "hurwitz": (compute_hurwitz, HurwitzResponse, "/hurwitz"),
    "mp-check": (compute_mp_check, MpCheckResponse, "/mp-check"),
    "matrices": (compute_matrices, MatricesResponse, "/matrices"),
    "appendix": (compute_appendix, AppendixResponse, "/appendix"),
    "verify": (compute_verify, VerifyResponse, "/verify"),
}


def _call(endpoint: str, request, server: str | None):
    handler, response_model, path = _ENDPOINTS[endpoint]
    if server is None:
        try:
            return handler(request)
        except HTTPException as exc:
            click.echo(f"error: {exc.detail}", err=True)
            sys.exit(1)
    import httpx

    resp = httpx.post(server.rstrip("/") + path, json=request.model_dump(mode="json"), timeout=600.0)
    if resp.status_code != 200:
        detail = resp.json().get("detail", resp.text) if resp.content else resp.text
        click.echo(f"error: {detail}", err=True)
        sys.exit(1)
    return response_model.model_validate(resp.json())


def _parse_insertions(text: str | None) -> list[InsertionSpec]:
    if not text:
        return []
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            alpha_s, _, pairing = item.partition(":")
            out.append(InsertionSpec(alpha=int(alpha_s), pairing=pairing or "1"))
        except (ValueError, ArithmeticError):
            raise click.BadParameter(f"bad insertion {item!r}; use alpha:pairing, e.g. 2:3/2")
    return out


def _parse_window(text: str | None):
    if text is None:
        return None
    try:
        lo_s, _, hi_s = text.partition(":")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise click.BadParameter(f"bad window {text!r}; use LO:HI, e.g. -10:10")
    if lo > hi:
        raise click.BadParameter(f"empty window {text!r}")
    return (lo, hi)


# --------------------------------------------------------------------------
# text renderers


def _coeff_str(term) -> str:
    re, im = Fraction(term.re), Fraction(term.im)
    if im:
        return f"({term.re}+{term.im}i)" if re else (f"{term.im}i" if im != 1 else "i")
    return str(re)


def _monomial(var: str, exp: int) -> str:
    if exp == 0:
        return ""
    if exp == 1:
        return var
    return f"{var}^{exp}"


def _render_series(doc, var: str) -> str:
    """Ascending-exponent rendering: '-q^-1 - 2 - q', '1/2*q^3 + ...'."""
    terms = sorted(doc.terms, key=lambda t: (t.exp, t.t_exp))
    if not terms:
        body = "0"
    else:
        parts = []
        for term in terms:
            c = Fraction(term.re)
            imag = Fraction(term.im)
            mono = _monomial(var, term.exp)
            if term.t_exp:
                tmono = _monomial("t", term.t_exp)
                mono = f"{tmono}*{mono}" if mono else tmono
            if imag:
                piece = f"{_coeff_str(term)}" + (f"*{mono}" if mono else "")
                sign = "+"
            else:
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                if not mono:
                    piece = str(mag)
                elif mag == 1:
                    piece = mono
                else:
                    piece = f"{mag}*{mono}"
            if not parts:
                parts.append(piece if sign == "+" else f"-{piece}")
            else:
                parts.append(f" {sign} {piece}")
        body = "".join(parts)
    if doc.truncation is not None:
        body += f" + O({var}^{doc.truncation})"
    return body


def _emit(doc_model, as_json: bool, text: str):
    if as_json:
        click.echo(json.dumps(doc_model.model_dump(mode="json"), indent=2, sort_keys=False))
    else:
        click.echo(text)


# --------------------------------------------------------------------------
# commands


@click.group()
def main():
    """Exact vertical stable-pair series calculator."""


_server_option = click.option("--server", default=None, metavar="URL", help="HTTP service to call instead of computing in-process.")
_format_option = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)


@main.command()
@click.option("--d", "d", type=int, required=True, help="Curve class multiple (d >= 1).")
@click.option("--h", "h", type=int, required=True, help="Genus of the canonical curve.")
@click.option("--chi-parity", type=click.Choice(["even", "odd"]), required=True)
@click.option("--insertions", default=None, metavar="A:P,...", help="Descendent insertions alpha:pairing.")
@click.option("--oracle", is_flag=True, help="Also run the direct summation and compare (needs --window).")
@click.option("--window", default=None, metavar="LO:HI", help="q-exponent window for expansions and the oracle.")
@_format_option
@_server_option
def pairs(d, h, chi_parity, insertions, oracle, window, fmt, server):
    """Vertical stable-pairs series (closed product formula)."""
    req = PairsRequest(
        d=d,
        h=h,
        chi_parity=chi_parity,
        insertions=_parse_insertions(insertions),
        oracle=oracle,
        window=_parse_window(window),
    )
    resp = _call("pairs", req, server)
    body = _render_series(resp.series, "q")
    if resp.t_power:
        body = f"t^{resp.t_power} * ({body})"
    lines = [body]
    if resp.series.window is not None:
        lines.append(f"window: q^{resp.series.window[0]} .. q^{resp.series.window[1]}")
    if resp.oracle is not None:
        lines.append(f"oracle match on window {list(resp.oracle.window)}: {resp.oracle.match}")
    _emit(resp, fmt == "json", "\n".join(lines))
    if resp.oracle is not None and not resp.oracle.match:
        sys.exit(1)


@main.command()
@click.option("--d", "d", type=int, required=True)
@click.option("--h", "h", type=int, required=True)
@click.option("--chi-parity", type=click.Choice(["even", "odd"]), required=True)
@click.option("--order", type=int, required=True, help="Truncation order in u.")
@click.option("--insertions", default=None, metavar="A:P,...")
@_format_option
@_server_option
def gw(d, h, chi_parity, order, insertions, fmt, server):
    """Gromov-Witten vertical series via the q = -exp(iu) substitution."""
    req = GwRequest(
        d=d, h=h, chi_parity=chi_parity, order=order, insertions=_parse_insertions(insertions)
    )
    resp = _call("gw", req, server)
    body = _render_series(resp.series, "u")
    if resp.t_power:
        body = f"t^{resp.t_power} * ({body})"
    lines = [body]
    if resp.conjecture_conditional:
        lines.append("note: descendent factor is conditional on the correspondence-matrix conjecture")
    _emit(resp, fmt == "json", "\n".join(lines))


@main.command()
@click.option("--d", "d", type=int, required=True)
@click.option("--h", "h", type=int, required=True)
@click.option("--chi-parity", type=click.Choice(["even", "odd"]), required=True)
@_format_option
@_server_option
def hurwitz(d, h, chi_parity, fmt, server):
    """Vertical contribution to the unramified spin Hurwitz number."""
    req = HurwitzRequest(d=d, h=h, chi_parity=chi_parity)
    resp = _call("hurwitz", req, server)
    _emit(resp, fmt == "json", resp.value)


@main.command("mp-check")
@click.option("--d", "d", type=click.IntRange(1, 2), required=True)
@click.option("--h", "h", type=int, required=True)
@click.option("--chi-parity", type=click.Choice(["even", "odd"]), required=True)
@click.option("--insertions", default=None, metavar="A:P,...")
@_format_option
@_server_option
def mp_check(d, h, chi_parity, insertions, fmt, server):
    """Compare the full pipeline with the closed degree-1/2 surface formulas."""
    req = MpCheckRequest(
        d=d, h=h, chi_parity=chi_parity, insertions=_parse_insertions(insertions)
    )
    resp = _call("mp-check", req, server)
    text = (
        f"match: {str(resp.match).lower()}\n"
        f"pipeline: {resp.pipeline_value}\n"
        f"closed:   {resp.closed_value}\n"
        "note: conditional on the correspondence-matrix conjecture"
    )
    _emit(resp, fmt == "json", text)
    if not resp.match:
        sys.exit(1)


@main.command()
@click.option("--size", type=int, required=True)
@_format_option
@_server_option
def matrices(size, fmt, server):
    """Correspondence matrices K and L with the inverse check."""
    req = MatricesRequest(size=size)
    resp = _call("matrices", req, server)

    def fmt_entry(e):
        re, im = Fraction(e.re), Fraction(e.im)
        if not im:
            return str(re)
        istr = "i" if im == 1 else ("-i" if im == -1 else f"{im}*i")
        return istr if not re else f"{re}{'+' if im > 0 else ''}{istr}"

    lines = []
    for name, rows in (("L", resp.L), ("K", resp.K)):
        for a, row in enumerate(rows, start=1):
            for b, entry in enumerate(row, start=1):
                lines.append(f"{name}[{a},{b}] = {fmt_entry(entry)}")
    lines.append(f"K*L == identity: {str(resp.inverse_check).lower()}")
    lines.append("note: interpretation as correspondence matrices is conjecture-conditional")
    _emit(resp, fmt == "json", "\n".join(lines))
    if not resp.inverse_check:
        sys.exit(1)


@main.command()
@click.option("--alpha-max", type=int, required=True)
@click.option("--pix", is_flag=True, help="Also check the bivariate generating identity.")
@click.option("--x-order", type=int, default=21, show_default=True)
@click.option("--v-order", type=int, default=9, show_default=True)
@_format_option
@_server_option
def appendix(alpha_max, pix, x_order, v_order, fmt, server):
    """Order/leading/uniqueness report for the sine-ratio combination."""
    req = AppendixRequest(alpha_max=alpha_max, pix=pix, x_order=x_order, v_order=v_order)
    resp = _call("appendix", req, server)
    lines = [
        f"alpha={r.alpha}: order_ok={str(r.order_ok).lower()} "
        f"leading={r.leading} closed_form_matches={str(r.solve_matches).lower()}"
        for r in resp.reports
    ]
    if resp.pix_ok is not None:
        lines.append(
            f"bivariate identity to x^{x_order - 1}, v^{v_order - 1}: {str(resp.pix_ok).lower()}"
        )
    lines.append(f"passed: {str(resp.passed).lower()}")
    _emit(resp, fmt == "json", "\n".join(lines))
    if not resp.passed:
        sys.exit(1)


@main.command()
@click.option(
    "--suite",
    type=click.Choice(["all", "oracle", "symmetry", "gw", "mp", "appendix"]),
    default="all",
    show_default=True,
)
@_format_option
@_server_option
def verify(suite, fmt, server):
    """Run the acceptance grids; exits nonzero on any failure."""
    req = VerifyRequest(suite=suite)
    resp = _call("verify", req, server)
    lines = [
        f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "")
        for c in resp.checks
    ]
    lines.append(f"{resp.suite}: {resp.total - resp.failed}/{resp.total} passed")
    _emit(resp, fmt == "json", "\n".join(lines))
    if not resp.passed:
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("vertpairs.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
