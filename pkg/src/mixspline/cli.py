"""Command line interface.

Exit codes: 0 success / valid, 1 validation or certification failure,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import formats
from .certify import Certificate, FailureReport, Provenance, certify_stability, verify_certificate
from .dimension import ChiBreakdown, euler_characteristic
from .errors import (
    BaseNotCertified,
    InvalidCertificate,
    InvalidDistribution,
    MeshError,
    MeshMismatch,
    NotBelowBase,
    ParamOutOfRange,
    ParseError,
)
from .generators import cyclic_mesh, hierarchical_mesh, is_hierarchical, removable_crosses, tensor_grid
from .homology import h0_dimension
from .mesh import TMesh, validate_tmesh
from .oracle import spline_basis_oracle, spline_dimension_oracle

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PROVENANCE_FLAGS = {
    "pht": Provenance.PHT,
    "verify-homology": Provenance.HOMOLOGY_VERIFIED,
    "assert": Provenance.USER_ASSERTED,
}


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


@dataclass
class RunReport:
    n0: int
    n1: int
    n2: int
    m: int
    mp: int
    chi: Optional[ChiBreakdown] = None
    h0: Optional[int] = None
    homological: Optional[int] = None
    oracle: Optional[int] = None
    certificate: Optional[str] = None
    notes: list = field(default_factory=list)

    @property
    def agreement(self) -> Optional[bool]:
        if self.homological is None or self.oracle is None:
            return None
        return self.homological == self.oracle

    def items(self):
        yield "n0", self.n0
        yield "n1", self.n1
        yield "n2", self.n2
        yield "degree", f"{self.m},{self.mp}"
        if self.chi is not None:
            yield "chi.face_term", self.chi.face_term
            yield "chi.horizontal_edge_term", self.chi.horizontal_edge_term
            yield "chi.vertical_edge_term", self.chi.vertical_edge_term
            yield "chi.vertex_term", self.chi.vertex_term
            yield "chi", self.chi.chi
        if self.h0 is not None:
            yield "h0", self.h0
        if self.homological is not None:
            yield "dim.homology", self.homological
        if self.oracle is not None:
            yield "dim.oracle", self.oracle
        if self.agreement is not None:
            yield "agreement", str(self.agreement).lower()
        if self.chi is not None and self.h0 is not None:
            yield "chi_alone", str(self.h0 == 0).lower()
        if self.certificate is not None:
            yield "certificate", self.certificate

    def render(self, fmt: str) -> str:
        if fmt in ("machine", "machine-readable"):
            return "\n".join(f"{k}={v}" for k, v in self.items()) + "\n"
        out = [f"mesh: n0={self.n0} n1={self.n1} n2={self.n2}", f"degree: ({self.m},{self.mp})"]
        if self.chi is not None:
            c = self.chi
            out.append(
                f"chi = {c.face_term} - {c.horizontal_edge_term} - {c.vertical_edge_term}"
                f" + {c.vertex_term} = {c.chi}"
            )
        if self.h0 is not None:
            out.append(f"dim H0 = {self.h0}")
        if self.homological is not None:
            out.append(f"dimension (chi + H0) = {self.homological}")
        if self.oracle is not None:
            out.append(f"dimension (oracle kernel) = {self.oracle}")
        if self.agreement is not None:
            out.append(f"agreement: {str(self.agreement).lower()}")
        if self.chi is not None and self.h0 is not None:
            out.append("dimension given by chi alone" if self.h0 == 0
                       else "dimension NOT given by chi alone")
        if self.certificate is not None:
            out.append(f"certificate: {self.certificate}")
        out.extend(self.notes)
        return "\n".join(out) + "\n"


# -- helpers ----------------------------------------------------------------


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_USAGE) from exc


def _load_mesh(path) -> TMesh:
    return formats.loads_mesh(_read(path))


def _load_valid_mesh(path) -> TMesh:
    mesh = _load_mesh(path)
    rep = validate_tmesh(mesh)
    if not rep.valid:
        raise CliError("invalid mesh: " + "; ".join(v.message for v in rep.violations), EXIT_FAIL)
    return mesh


def _parse_degree(text: str) -> tuple[int, int]:
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"degree must be 'm,mp', got {text!r}")
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2 or min(parts) < 0:
        raise argparse.ArgumentTypeError(f"degree must be two non-negative integers, got {text!r}")
    return parts[0], parts[1]


def _write(path, text: str, stdout):
    if path is None or path == "-":
        stdout.write(text)
    else:
        Path(path).write_text(text)


def edge_table(mesh: TMesh) -> str:
    lines = ["edges (id orientation start end kind):"]
    for e in mesh.edges:
        a, b = mesh.vertices[e.start], mesh.vertices[e.end]
        kind = "interior" if mesh.is_interior_edge(e.id) else "boundary"
        lines.append(
            f"  {e.id:4d} {e.orientation.value[0]} ({formats.format_rational(a.x)},{formats.format_rational(a.y)})"
            f" -> ({formats.format_rational(b.x)},{formats.format_rational(b.y)}) {kind}"
        )
    return "\n".join(lines) + "\n"


# -- commands ---------------------------------------------------------------


def cmd_validate(args, stdout) -> int:
    try:
        mesh = _load_mesh(args.mesh)
    except MeshError as exc:
        stdout.write(f"invalid: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL
    rep = validate_tmesh(mesh)
    if args.format in ("machine", "machine-readable"):
        stdout.write(f"n0={rep.n0}\nn1={rep.n1}\nn2={rep.n2}\neuler={rep.euler}\nvalid={str(rep.valid).lower()}\n")
        for v in rep.violations:
            stdout.write(f"violation={v.code}: {v.message}\n")
    else:
        stdout.write(f"n0={rep.n0} n1={rep.n1} n2={rep.n2}\n")
        stdout.write(f"euler: n0 - n1 + n2 = {rep.euler}\n")
        stdout.write(edge_table(mesh))
        if rep.valid:
            stdout.write("valid\n")
        for v in rep.violations:
            stdout.write(f"violation [{v.code}]: {v.message}\n")
    return EXIT_OK if rep.valid else EXIT_FAIL


def cmd_dim(args, stdout) -> int:
    mesh = _load_valid_mesh(args.mesh)
    dist = formats.loads_smoothness(_read(args.smoothness), mesh)
    m, mp = args.degree
    rep = RunReport(mesh.n0, mesh.n1, mesh.n2, m, mp)
    method = args.method
    if method in ("chi", "homology", "all"):
        rep.chi = euler_characteristic(mesh, dist, m, mp)
    if method in ("homology", "all"):
        rep.h0 = h0_dimension(mesh, dist, m, mp)
        rep.homological = rep.chi.chi + rep.h0
    if method in ("oracle", "all"):
        rep.oracle = spline_dimension_oracle(mesh, dist, m, mp)
    stdout.write(rep.render(args.format))
    if rep.agreement is False:
        return EXIT_FAIL
    return EXIT_OK


def cmd_certify(args, stdout) -> int:
    mesh = _load_valid_mesh(args.mesh)
    base = formats.loads_smoothness(_read(args.base), mesh)
    target = formats.loads_smoothness(_read(args.target), mesh)
    m, mp = args.degree
    provenance = PROVENANCE_FLAGS[args.provenance]
    result = certify_stability(mesh, base, target, m, mp, provenance)
    rep = RunReport(mesh.n0, mesh.n1, mesh.n2, m, mp)
    rep.chi = euler_characteristic(mesh, target, m, mp)
    if isinstance(result, Certificate):
        verify_certificate(mesh, result, m, mp)
        rep.certificate = f"ok, {len(result.steps)} steps"
        for n, st in enumerate(result.steps):
            j = st.justification
            why = (f"contained in segment {list(j.container)}" if j.kind == "container"
                   else f"weight {j.weight} >= {j.threshold}")
            rep.notes.append(f"  step {n}: edges {list(st.segment.edge_ids)} -> order {st.order} ({why})")
        rep.notes.append(f"dim = chi = {rep.chi.chi} (certified)")
        if args.out:
            Path(args.out).write_text(formats.dumps_certificate(result, m, mp))
        stdout.write(rep.render(args.format))
        return EXIT_OK

    assert isinstance(result, FailureReport)
    rep.certificate = "failed"
    rep.notes.append(f"residual edges: {list(result.residual_edges)}")
    for seg in result.residual_segments():
        rep.notes.append(f"  no certified step for segment {list(seg)}")
    rep.h0 = h0_dimension(mesh, target, m, mp)
    rep.homological = rep.chi.chi + rep.h0
    rep.notes.append(f"uncertified, computed directly: dim = {rep.homological} (H0 = {rep.h0})")
    stdout.write(rep.render(args.format))
    return EXIT_FAIL


def cmd_verify_certificate(args, stdout) -> int:
    mesh = _load_valid_mesh(args.mesh)
    cert, m, mp = formats.loads_certificate(_read(args.certificate), mesh)
    try:
        verify_certificate(mesh, cert, m, mp)
    except InvalidCertificate as exc:
        stdout.write(f"invalid certificate: {exc}\n")
        return EXIT_FAIL
    stdout.write(f"certificate ok, dim = {euler_characteristic(mesh, cert.final, m, mp).chi}\n")
    return EXIT_OK


def cmd_gen(args, stdout) -> int:
    if args.kind == "grid":
        mesh = tensor_grid(args.kx, args.ky)
    elif args.kind == "hierarchical":
        mesh = hierarchical_mesh(args.seed, args.depth)
    elif args.kind == "cyclic":
        mesh = cyclic_mesh(args.refinements, args.seed)
    else:
        from .instances import weight_deficit_instance

        mesh, base, target, _ = weight_deficit_instance()
        if args.base_out:
            Path(args.base_out).write_text(formats.dumps_smoothness(base))
        if args.target_out:
            Path(args.target_out).write_text(formats.dumps_smoothness(target))
    _write(args.out, formats.dumps_mesh(mesh), stdout)
    if args.out not in (None, "-"):
        stdout.write(f"wrote {args.out}: n0={mesh.n0} n1={mesh.n1} n2={mesh.n2}\n")
        if args.kind == "cyclic":
            crosses = len(removable_crosses(frozenset(mesh.face_rects())))
            stdout.write(f"hierarchical: {str(is_hierarchical(mesh)).lower()}"
                         f" (removable cross-splits: {crosses})\n")
    return EXIT_OK


def cmd_basis(args, stdout) -> int:
    mesh = _load_valid_mesh(args.mesh)
    dist = formats.loads_smoothness(_read(args.smoothness), mesh)
    m, mp = args.degree
    basis = spline_basis_oracle(mesh, dist, m, mp)
    _write(args.out, formats.dumps_basis(basis, m, mp), stdout)
    if args.out not in (None, "-"):
        stdout.write(f"wrote {len(basis)} basis functions to {args.out}\n")
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mixspline", description="Dimension of mixed-smoothness splines on T-meshes")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "machine", "machine-readable"), default="text")

    sp = sub.add_parser("validate", help="validate a mesh file and print its edge table")
    sp.add_argument("--mesh", required=True)
    fmt(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("dim", help="compute the spline space dimension")
    sp.add_argument("--mesh", required=True)
    sp.add_argument("--smoothness", required=True)
    sp.add_argument("--degree", type=_parse_degree, required=True, help="m,mp")
    sp.add_argument("--method", choices=("chi", "homology", "oracle", "all"), default="all")
    fmt(sp)
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("certify", help="certify stability of a reduced distribution")
    sp.add_argument("--mesh", required=True)
    sp.add_argument("--base", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--degree", type=_parse_degree, required=True)
    sp.add_argument("--provenance", choices=sorted(PROVENANCE_FLAGS), default="pht")
    sp.add_argument("--out", help="certificate file to write on success")
    fmt(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("verify-certificate", help="re-check a certificate file")
    sp.add_argument("--mesh", required=True)
    sp.add_argument("--certificate", required=True)
    sp.set_defaults(func=cmd_verify_certificate)

    sp = sub.add_parser("basis", help="export a spline basis computed from the oracle kernel")
    sp.add_argument("--mesh", required=True)
    sp.add_argument("--smoothness", required=True)
    sp.add_argument("--degree", type=_parse_degree, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_basis)

    gen = sub.add_parser("gen", help="generate a mesh file")
    gsub = gen.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("grid")
    g.add_argument("kx", type=int)
    g.add_argument("ky", type=int)
    g = gsub.add_parser("hierarchical")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--depth", type=int, default=3)
    g = gsub.add_parser("cyclic")
    g.add_argument("--refinements", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g = gsub.add_parser("witness", help="bi-cubic instance whose reduction leaves H0 = 1")
    g.add_argument("--base-out")
    g.add_argument("--target-out")
    for g in gsub.choices.values():
        g.add_argument("--out")
        g.set_defaults(func=cmd_gen)
    return p


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, stdout)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except (ParseError, MeshMismatch, InvalidDistribution, ParamOutOfRange) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except (MeshError, NotBelowBase, BaseNotCertified) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
