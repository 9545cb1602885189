"""Command-line front end: mutate seeds, enumerate the cone atlas, run the
verification suites, specialize the degenerating family, reproduce the
stored tables, and inspect stars of fan faces.

Exit codes: 0 success, 1 a verification failed, 2 malformed input,
3 attempt to mutate a frozen direction, 4 misuse of a truncated atlas.
Set CLUSTER_FORGE_THREADS to allow verification batches to run on a thread
pool; output order is canonical either way.
"""

import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import click

from . import corpus
from .degeneration import (
    Family,
    central_fiber_toric_check,
    cocycle_check,
    degree_check,
    glue_ring_check_all,
    limit_check,
    specialize_fiber,
    strata_consistency_check,
)
from .exact_algebra import ExactAlgebraError, limit_t_zero
from .gfan import (
    FanDepthExceeded,
    enumerate_gfan,
    fan_from_json,
    fan_to_json,
    star,
)
from .invariants import (
    CheckFailed,
    c_matrix,
    check_sign_coherence,
    g_matrix_degrees,
    langlands_dual,
    mat_det,
    mat_identity,
    mat_mul,
    mat_transpose,
    rows_to_csv,
    rows_to_json,
    separation_check,
    table_rows,
)
from .seeds import YSeedCoeff, mutate_y_seed, seed_from_json

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_FROZEN = 3
EXIT_TRUNCATED = 4


def _fail(code, msg):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _load_json_file(path, what):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        _fail(EXIT_INPUT, f"{what} file {path} not found")
    except json.JSONDecodeError as exc:
        _fail(EXIT_INPUT, f"{what} file {path} is not valid JSON: {exc}")


def _load_seed(path):
    obj = _load_json_file(path, "seed")
    try:
        return seed_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        _fail(EXIT_INPUT, f"seed file {path} is malformed: {exc}")


def _parse_directions(text, ed, source, mutable_only=True):
    """Comma-separated 1-based directions to 0-based, validating range and
    frozenness."""
    if not text:
        return ()
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        try:
            k = int(piece)
        except ValueError:
            _fail(EXIT_INPUT, f"{source}: direction {piece!r} is not an integer")
        if not 1 <= k <= ed.size:
            _fail(EXIT_INPUT,
                  f"{source}: direction {k} out of range 1..{ed.size}")
        if mutable_only and k > ed.n:
            _fail(EXIT_FROZEN,
                  f"{source}: direction {k} is frozen (mutable directions "
                  f"are 1..{ed.n})")
        out.append(k - 1)
    return tuple(out)


def _thread_count():
    raw = os.environ.get("CLUSTER_FORGE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_batch(fn, items):
    threads = _thread_count()
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _mat_text(M):
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]"
                           for row in M) + "]"


def _echo_json(obj):
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


@click.group()
def main():
    """Exact cluster-pattern toolkit: mutation, fans, verification,
    degenerations, tables."""


# -- mutate ------------------------------------------------------------------


@main.command()
@click.option("--seed", "seed_path", required=True,
              help="seed JSON file (matrix, mutable count, coefficients)")
@click.option("--path", "path_text", default="",
              help="comma-separated 1-based mutation directions")
@click.option("--with-coeffs", "coeffs", default=None,
              help="coefficient choice: principal, none, or trop:R to use "
                   "the seed file's rank-R tropical tuple")
@click.option("--json", "as_json", is_flag=True, help="machine output")
def mutate(seed_path, path_text, coeffs, as_json):
    """Mutate the Y-seed along a path and print the result."""
    ed, p_file = _load_seed(seed_path)
    path = _parse_directions(path_text, ed, "--path")
    if coeffs == "principal":
        seed = YSeedCoeff.initial_principal(ed)
    elif coeffs == "none":
        seed = YSeedCoeff.initial_trivial(ed)
    elif coeffs is None:
        seed = (YSeedCoeff.initial(ed, p_file) if len(p_file) == ed.n
                else YSeedCoeff.initial_trivial(ed))
    elif coeffs.startswith("trop:"):
        try:
            rank = int(coeffs.split(":", 1)[1])
        except ValueError:
            _fail(EXIT_INPUT,
                  f"--with-coeffs {coeffs!r}: rank is not an integer")
        if len(p_file) != ed.n:
            _fail(EXIT_INPUT,
                  f"seed file {seed_path} carries no coefficient tuple of "
                  f"length {ed.n} for --with-coeffs trop:{rank}")
        got = len(p_file[0].exps)
        if got != rank:
            _fail(EXIT_INPUT,
                  f"seed file {seed_path} has coefficient rank {got}, "
                  f"not {rank}")
        seed = YSeedCoeff.initial(ed, p_file)
    else:
        _fail(EXIT_INPUT, f"unknown --with-coeffs value {coeffs!r}")
    for k in path:
        seed = mutate_y_seed(seed, k)
    if as_json:
        _echo_json({
            "B": [list(r) for r in seed.exchange.B],
            "p": [m.to_text() for m in seed.p],
            "y": [f.to_text() for f in seed.y],
        })
    else:
        click.echo(f"matrix: {_mat_text(seed.exchange.B)}")
        for i, m in enumerate(seed.p):
            click.echo(f"p{i + 1}: {m.to_text()}")
        for i, f in enumerate(seed.y):
            click.echo(f"Y{i + 1}: {f.to_text()}")


# -- fan ---------------------------------------------------------------------


@main.command()
@click.option("--seed", "seed_path", required=True)
@click.option("--freeze", "freeze_text", default="",
              help="comma-separated 1-based directions to exclude")
@click.option("--depth", default=64, show_default=True,
              help="breadth-first depth cap")
@click.option("--out", "out_path", default=None,
              help="write the atlas JSON here instead of stdout")
@click.option("--json", "as_json", is_flag=True,
              help="print the atlas JSON to stdout even with --out")
def fan(seed_path, freeze_text, depth, out_path, as_json):
    """Enumerate the atlas of maximal cones reachable from the seed."""
    ed, _ = _load_seed(seed_path)
    frozen = set(_parse_directions(freeze_text, ed, "--freeze"))
    allowed = tuple(k for k in range(ed.n) if k not in frozen)
    if not allowed:
        _fail(EXIT_INPUT, "--freeze leaves no mutable directions")
    atlas = enumerate_gfan(ed, depth_cap=depth, allowed=allowed, partial=True)
    if not atlas.complete:
        click.echo(f"warning: enumeration truncated at depth {depth}; "
                   "the atlas is incomplete", err=True)
    obj = fan_to_json(atlas)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2, sort_keys=True)
            fh.write("\n")
        if not as_json:
            click.echo(f"{len(atlas.cones)} cones, {len(atlas.rays)} rays "
                       f"-> {out_path}")
    if as_json or not out_path:
        _echo_json(obj)
    sys.exit(EXIT_OK if atlas.complete else EXIT_TRUNCATED)


# -- verify ------------------------------------------------------------------


def _random_paths(ed, paths_arg, max_len, rng_seed, source):
    if paths_arg.startswith("random:"):
        try:
            count = int(paths_arg.split(":", 1)[1])
        except ValueError:
            _fail(EXIT_INPUT, f"{source}: {paths_arg!r} is not random:N")
        rng = random.Random(rng_seed)
        return [tuple(rng.randrange(ed.n)
                      for _ in range(rng.randint(1, max_len)))
                for _ in range(count)]
    return [_parse_directions(p, ed, source) for p in paths_arg.split(";")]


def _need_mutable(ed, seed_path, check):
    if ed.m:
        _fail(EXIT_INPUT,
              f"verify {check}: seed file {seed_path} has frozen "
              "directions; this check needs a fully mutable seed")


def _enumerate_or_die(ed, depth, allowed=None):
    try:
        return enumerate_gfan(ed, depth_cap=depth, allowed=allowed)
    except FanDepthExceeded:
        _fail(EXIT_TRUNCATED,
              f"fan enumeration is still growing at depth {depth}; "
              "raise --depth or freeze directions")


@main.command()
@click.argument("check", type=click.Choice([
    "separation", "duality", "signcoherence", "cocycle", "degree", "limit",
    "strata", "glue"]))
@click.option("--seed", "seed_path", required=True)
@click.option("--paths", "paths_spec", default="random:20", show_default=True,
              help="random:N, or semicolon-separated explicit paths")
@click.option("--max-len", default=8, show_default=True)
@click.option("--rng-seed", default=0, show_default=True)
@click.option("--depth", default=64, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def verify(check, seed_path, paths_spec, max_len, rng_seed, depth, as_json):
    """Run one verification suite against a seed; exit 1 on failure."""
    ed, p_file = _load_seed(seed_path)
    results = []

    if check == "separation":
        p0 = (p_file if len(p_file) == ed.n
              else YSeedCoeff.initial_principal(ed).p)
        paths = _random_paths(ed, paths_spec, max_len, rng_seed, "--paths")

        def one(path):
            label = "path " + (",".join(str(k + 1) for k in path) or "(empty)")
            try:
                separation_check(ed, p0, path)
                return label, True, ""
            except (CheckFailed, ExactAlgebraError) as exc:
                return label, False, str(exc)

        results = _run_batch(one, paths)

    elif check in ("duality", "signcoherence"):
        atlas = _enumerate_or_die(ed, depth)
        dual = langlands_dual(ed)
        eye = mat_identity(ed.n)
        for rec in atlas.cones:
            label = "cone " + (",".join(str(k + 1) for k in rec.path)
                               or "(initial)")
            try:
                C = c_matrix(ed, rec.path)
                if check == "signcoherence":
                    ok = check_sign_coherence(C)
                    results.append((label, ok,
                                    "" if ok else "mixed-sign column"))
                    continue
                G = g_matrix_degrees(ed, rec.path)
                Cd = c_matrix(dual, rec.path)
                if mat_mul(mat_transpose(G), Cd) != eye:
                    results.append((label, False, "duality identity failed"))
                elif abs(mat_det(G)) != 1:
                    results.append((label, False, "degree matrix not unimodular"))
                else:
                    results.append((label, True, ""))
            except (CheckFailed, ExactAlgebraError) as exc:
                results.append((label, False, str(exc)))

    else:
        _need_mutable(ed, seed_path, check)
        fam = Family(ed, atlas=_enumerate_or_die(ed, depth))
        named = {
            "cocycle": lambda: cocycle_check(fam, max_len=max_len),
            "degree": lambda: degree_check(fam),
            "limit": lambda: limit_check(fam),
        }
        try:
            if check in named:
                named[check]()
                results.append((check, True, ""))
                if check == "limit":
                    central_fiber_toric_check(fam)
                    results.append(("central fiber", True, ""))
            elif check == "glue":
                for free, label in ((True, "coefficient-free"),
                                    (False, "with coefficients")):
                    glue_ring_check_all(fam, coefficient_free=free)
                    results.append((label, True, ""))
            elif check == "strata":
                for ray in fam.atlas.rays:
                    strata_consistency_check(fam, [ray])
                    results.append((f"ray {ray}", True, ""))
        except (CheckFailed, ExactAlgebraError) as exc:
            results.append((check, False, str(exc)))

    results.sort(key=lambda r: r[0])
    ok = all(r[1] for r in results)
    if as_json:
        _echo_json({
            "check": check,
            "ok": ok,
            "results": [{"label": l, "ok": o, "detail": d}
                        for l, o, d in results],
        })
    else:
        for label, good, detail in results:
            suffix = "" if good else f"  [{detail}]"
            click.echo(f"{check} {label}: {'ok' if good else 'FAIL'}{suffix}")
        passed = sum(1 for r in results if r[1])
        click.echo(f"verify {check}: {passed}/{len(results)} ok")
    sys.exit(EXIT_OK if ok else EXIT_VERIFY)


# -- degenerate ---------------------------------------------------------------


@main.command()
@click.option("--seed", "seed_path", required=True)
@click.option("--at", "at_text", required=True,
              help="comma-separated rational base point u1,...,un")
@click.option("--depth", default=64, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def degenerate(seed_path, at_text, depth, as_json):
    """Print the wall transition maps of the family specialized at a base
    point; the zero point gives the toric gluing of the central fiber."""
    ed, _ = _load_seed(seed_path)
    if ed.m:
        _fail(EXIT_INPUT, f"degenerate: seed file {seed_path} has frozen "
              "directions; the family needs a fully mutable seed")
    try:
        u = [Fraction(piece.strip()) for piece in at_text.split(",")]
    except (ValueError, ZeroDivisionError):
        _fail(EXIT_INPUT, f"--at {at_text!r} is not a comma-separated "
              "rational vector")
    if len(u) != ed.n:
        _fail(EXIT_INPUT, f"--at needs {ed.n} components, got {len(u)}")
    zeros = [x == 0 for x in u]
    if any(zeros) and not all(zeros):
        _fail(EXIT_INPUT, "--at must be all zero (central fiber) or all "
              "nonzero (smooth fiber)")
    fam = Family(ed, atlas=_enumerate_or_die(ed, depth))
    walls = []
    for (src, k), dst in sorted(fam.atlas.adjacency.items()):
        T = fam.transition(src, k)
        if all(zeros):
            images = [limit_t_zero(f, fam.tnames).to_text()
                      for f in T.images]
        else:
            images = []
            for f in specialize_fiber(T.images, fam.tnames, u):
                nt, dt = f.num.to_text(), f.den.to_text()
                if dt == "1":
                    images.append(nt)
                    continue
                if " " in nt:
                    nt = f"({nt})"
                if " " in dt or "*" in dt:
                    dt = f"({dt})"
                images.append(f"{nt} / {dt}")
        walls.append({"src": src, "direction": k + 1, "dst": dst,
                      "images": images})
    if as_json:
        _echo_json({"at": [str(x) for x in u], "walls": walls})
    else:
        kind = ("toric gluing of the central fiber" if all(zeros)
                else "fiber transition maps")
        click.echo(f"{kind} at ({', '.join(str(x) for x in u)})")
        for w in walls:
            click.echo(f"wall cone {w['src']} --{w['direction']}--> "
                       f"cone {w['dst']}")
            for i, img in enumerate(w["images"]):
                click.echo(f"  X{i + 1} -> {img}")
    sys.exit(EXIT_OK)


# -- table --------------------------------------------------------------------


@main.command()
@click.argument("which", type=click.Choice(["a2", "a2-principal", "gr25",
                                            "dp5"]))
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]),
              default="text", show_default=True)
def table(which, fmt):
    """Reproduce a stored table (text output is byte-identical to the
    golden file)."""
    texts = {
        "a2": corpus.a2_table_text,
        "a2-principal": corpus.a2_principal_table_text,
        "gr25": corpus.gr25_table_text,
        "dp5": corpus.dp5_table_text,
    }
    if fmt == "text":
        click.echo(texts[which](), nl=False)
        sys.exit(EXIT_OK)
    if which in ("a2", "a2-principal"):
        rows = table_rows(corpus.a2_exchange(), corpus.PENTAGON_PATH)
        if fmt == "csv":
            click.echo(rows_to_csv(rows), nl=False)
        else:
            click.echo(rows_to_json(rows))
        sys.exit(EXIT_OK)
    if fmt == "csv":
        _fail(EXIT_INPUT, f"table {which}: csv rows are only defined for "
              "the pentagon tables (a2, a2-principal)")
    report = corpus.run_gr25() if which == "gr25" else corpus.run_dp5()
    _echo_json(report)
    sys.exit(EXIT_OK)


# -- star ---------------------------------------------------------------------


@main.command(name="star")
@click.option("--fan", "fan_path", required=True, help="atlas JSON from fan")
@click.option("--tau", required=True, help="face to star at, as ray:I "
              "(1-based index into the file's ray list)")
@click.option("--json", "as_json", is_flag=True)
def star_cmd(fan_path, tau, as_json):
    """Print the star of a fan face: base cone, quotient coordinates, and
    the projected cones."""
    obj = _load_json_file(fan_path, "fan")
    try:
        atlas = fan_from_json(obj)
    except FanDepthExceeded:
        _fail(EXIT_TRUNCATED,
              f"fan file {fan_path} is marked incomplete (truncated "
              "enumeration); re-run fan with a larger --depth")
    except (CheckFailed, KeyError, TypeError, ValueError) as exc:
        _fail(EXIT_INPUT, f"fan file {fan_path} is malformed or stale: {exc}")
    if not tau.startswith("ray:"):
        _fail(EXIT_INPUT, f"--tau {tau!r} must look like ray:I")
    try:
        ray_index = int(tau.split(":", 1)[1])
    except ValueError:
        _fail(EXIT_INPUT, f"--tau {tau!r}: index is not an integer")
    rays = [tuple(r) for r in obj["rays"]]
    if not 1 <= ray_index <= len(rays):
        _fail(EXIT_INPUT,
              f"--tau ray:{ray_index} out of range 1..{len(rays)}")
    ray = rays[ray_index - 1]
    try:
        st = star(atlas, [ray])
    except CheckFailed as exc:
        _fail(EXIT_VERIFY, str(exc))
    data = {
        "ray": list(ray),
        "base_cone_path": [k + 1 for k in st.base.path],
        "quotient_rows": [list(r) for r in st.quotient_rows],
        "projected_cones": [{"cone": idx, "generators": [list(g) for g in gens]}
                            for idx, gens in st.proj_cones],
        "restricted_matrix": [list(r) for r in st.restricted.B],
    }
    if as_json:
        _echo_json(data)
    else:
        click.echo(f"star of ray {ray}")
        click.echo("base cone path: "
                   + (",".join(str(k) for k in data["base_cone_path"])
                      or "(initial)"))
        click.echo(f"quotient rows: {_mat_text(st.quotient_rows)}")
        for pc in data["projected_cones"]:
            gens = ", ".join(str(tuple(g)) for g in pc["generators"])
            click.echo(f"cone {pc['cone']}: {gens}")
        click.echo(f"restricted matrix: {_mat_text(st.restricted.B)}")
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
