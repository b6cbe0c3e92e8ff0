"""Line-oriented recipe files: parse, validate, and canonical serialization.

Grammar, one directive per line (blank lines and # comments ignored):

    recipe NAME
    param NAME default INT
    block ID as VAR
    sum2 VAR.SURF VAR.SURF map MAPNAME|inline(w1,w2,w3,w4) [quotient] [parallel]
    sumT VAR.TORUS VAR.TORUS map inline(w1,w2)
    surgery VAR.TORUS p INT q INT dir m^INT l^INT
    fill VAR.SURF|VAR.TORUS|VAR.*
    blowup VAR [on SURF]
    certify VAR.SURF
    assert KIND ARGS

Integers may be parameter names (optionally sign-prefixed).  Words use
generator symbols with ^n exponents, * or whitespace products, and
[u,v] commutator sugar.  Parse errors carry line and column; parsing the
canonical serialization reproduces the recipe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import AbelianGroup
from .recipes import (
    Assertion,
    BlockStep,
    BlowupStep,
    CertifyStep,
    FillStep,
    Recipe,
    RecipeError,
    Step,
    Sum2Step,
    SumTStep,
    SurgeryStep,
    torus_slot_map,
)
from .words import WordSyntaxError


class RecipeSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class TextRecipe:
    """A parsed recipe file: static steps plus simple assertions."""

    name: str
    params: dict
    steps: tuple[Step, ...]
    raw_assertions: tuple[tuple, ...]

    def to_recipe(self) -> Recipe:
        steps = list(self.steps)
        raw = self.raw_assertions

        def build_assertions(params: dict) -> list[Assertion]:
            return [_build_assertion(spec) for spec in raw]

        return Recipe(
            self.name,
            dict(self.params),
            lambda params: list(steps),
            build_assertions,
        )


def _build_assertion(spec: tuple) -> Assertion:
    kind = spec[0]
    if kind == "pi1":
        claim, args = spec[1], spec[2]
        return Assertion(
            "pi1_certificate", lambda p: (claim, dict(args)), f"pi1 {claim}"
        )
    if kind == "h1":
        rank, torsion = spec[1], spec[2]
        group = AbelianGroup(rank, tuple(torsion))
        return Assertion("h1_equals", lambda p: group, f"H1 = {group}")
    if kind == "e_sigma":
        e, sigma = spec[1], spec[2]
        return Assertion(
            "e_sigma_equals", lambda p: (e, sigma), f"e={e}, sigma={sigma}"
        )
    if kind == "freedman":
        m, n = spec[1], spec[2]
        return Assertion(
            "freedman_equals", lambda p: (m, n), f"{m}CP2 # {n}CP2bar"
        )
    if kind == "word_trivial":
        var, text = spec[1], spec[2]
        return Assertion(
            "word_trivial",
            lambda model: model.word(text),
            f"{text} = 1",
        )
    raise RecipeError(f"unknown assertion {kind!r}")


def _int_or_param(token: str, line: int, params: dict) -> int | str:
    try:
        return int(token)
    except ValueError:
        stripped = token[1:] if token.startswith("-") else token
        if stripped.isidentifier() and stripped in params:
            return token
        raise RecipeSyntaxError(
            f"expected integer or declared parameter, got {token!r}", line
        )


def _split_piece(token: str, line: int) -> tuple[str, str]:
    if "." not in token:
        raise RecipeSyntaxError(f"expected VAR.PIECE, got {token!r}", line)
    var, piece = token.split(".", 1)
    return var, piece


def _parse_inline_words(token: str, count: int, line: int) -> tuple[str, ...]:
    if not (token.startswith("inline(") and token.endswith(")")):
        raise RecipeSyntaxError(f"expected inline(...), got {token!r}", line)
    inner = token[len("inline(") : -1]
    parts = [p.strip() for p in inner.split(";")]
    if len(parts) != count:
        raise RecipeSyntaxError(
            f"inline map needs {count} words separated by ';'", line
        )
    return tuple(parts)


def parse_recipe(text: str) -> TextRecipe:
    name = None
    params: dict = {}
    steps: list[Step] = []
    assertions: list[tuple] = []

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "recipe":
            if len(tokens) != 2:
                raise RecipeSyntaxError("recipe takes one name", lineno)
            name = tokens[1]
        elif head == "param":
            if len(tokens) != 4 or tokens[2] != "default":
                raise RecipeSyntaxError("expected: param NAME default INT", lineno)
            try:
                params[tokens[1]] = int(tokens[3])
            except ValueError:
                raise RecipeSyntaxError("default must be an integer", lineno)
        elif head == "block":
            if len(tokens) != 4 or tokens[2] != "as":
                raise RecipeSyntaxError("expected: block ID as VAR", lineno)
            steps.append(BlockStep(tokens[1], tokens[3]))
        elif head == "sum2":
            if len(tokens) < 5 or tokens[3] != "map":
                raise RecipeSyntaxError(
                    "expected: sum2 VAR.SURF VAR.SURF map NAME [quotient] [parallel]",
                    lineno,
                )
            avar, asurf = _split_piece(tokens[1], lineno)
            bvar, bsurf = _split_piece(tokens[2], lineno)
            map_token = tokens[4]
            flags = set(tokens[5:])
            unknown = flags - {"quotient", "parallel"}
            if unknown:
                raise RecipeSyntaxError(f"unknown flags {sorted(unknown)}", lineno)
            gluing: str | tuple
            if map_token.startswith("inline("):
                words = _parse_inline_words(map_token, 4, lineno)
                gluing = ("inline", words)  # resolved against the target at run time
            else:
                gluing = map_token
            steps.append(
                Sum2Step(
                    avar, asurf, bvar, bsurf, gluing,
                    quotient="quotient" in flags,
                    parallel="parallel" in flags,
                )
            )
        elif head == "sumT":
            if len(tokens) != 5 or tokens[3] != "map":
                raise RecipeSyntaxError(
                    "expected: sumT VAR.TORUS VAR.TORUS map inline(w1;w2)", lineno
                )
            lvar, ltorus = _split_piece(tokens[1], lineno)
            rvar, rtorus = _split_piece(tokens[2], lineno)
            words = _parse_inline_words(tokens[4], 2, lineno)
            try:
                gluing = torus_slot_map("inline", words[0], words[1])
            except (WordSyntaxError, ValueError) as exc:
                raise RecipeSyntaxError(str(exc), lineno)
            steps.append(SumTStep(lvar, ltorus, rvar, rtorus, gluing))
        elif head == "surgery":
            if (
                len(tokens) != 8
                or tokens[2] != "p"
                or tokens[4] != "q"
                or tokens[6] != "dir"
            ):
                raise RecipeSyntaxError(
                    "expected: surgery VAR.TORUS p INT q INT dir m^INT*l^INT", lineno
                )
            var, torus = _split_piece(tokens[1], lineno)
            p = _int_or_param(tokens[3], lineno, params)
            q = _int_or_param(tokens[5], lineno, params)
            a, b = _parse_direction(tokens[7], lineno, params)
            steps.append(SurgeryStep(var, torus, p, q, a, b))
        elif head == "fill":
            if len(tokens) != 2:
                raise RecipeSyntaxError("expected: fill VAR.PIECE", lineno)
            var, piece = _split_piece(tokens[1], lineno)
            steps.append(FillStep(var, piece))
        elif head == "blowup":
            if len(tokens) == 2:
                steps.append(BlowupStep(tokens[1]))
            elif len(tokens) == 4 and tokens[2] == "on":
                steps.append(BlowupStep(tokens[1], tokens[3]))
            else:
                raise RecipeSyntaxError("expected: blowup VAR [on SURF]", lineno)
        elif head == "certify":
            if len(tokens) != 2:
                raise RecipeSyntaxError("expected: certify VAR.SURF", lineno)
            var, surf = _split_piece(tokens[1], lineno)
            steps.append(CertifyStep(var, surf))
        elif head == "assert":
            assertions.append(_parse_assertion(tokens[1:], lineno))
        else:
            raise RecipeSyntaxError(f"unknown directive {head!r}", lineno)

    if name is None:
        raise RecipeSyntaxError("missing recipe NAME header", 1)
    return TextRecipe(name, params, tuple(steps), tuple(assertions))


def _parse_direction(
    token: str, line: int, params: dict
) -> tuple[int | str, int | str]:
    a: int | str = 0
    b: int | str = 0
    for part in token.split("*"):
        if part.startswith("m^"):
            a = _int_or_param(part[2:], line, params)
        elif part == "m":
            a = 1
        elif part.startswith("l^"):
            b = _int_or_param(part[2:], line, params)
        elif part == "l":
            b = 1
        else:
            raise RecipeSyntaxError(f"bad direction component {part!r}", line)
    return a, b


def _parse_assertion(tokens: list[str], line: int) -> tuple:
    if not tokens:
        raise RecipeSyntaxError("empty assertion", line)
    kind = tokens[0]
    if kind == "pi1":
        if len(tokens) < 2:
            raise RecipeSyntaxError("expected: assert pi1 CLAIM [ARGS]", line)
        claim = tokens[1]
        if claim in ("trivial", "infinite-cyclic"):
            return ("pi1", claim, ())
        if claim in ("free", "free-abelian"):
            if len(tokens) != 3:
                raise RecipeSyntaxError(f"assert pi1 {claim} RANK", line)
            return ("pi1", claim, (("rank", int(tokens[2])),))
        if claim == "finite-order":
            return ("pi1", "finite", (("order", int(tokens[2])),))
        raise RecipeSyntaxError(f"unknown pi1 claim {claim!r}", line)
    if kind == "h1":
        # assert h1 rank R [torsion d1,d2,...]
        if len(tokens) < 3 or tokens[1] != "rank":
            raise RecipeSyntaxError("expected: assert h1 rank R [torsion LIST]", line)
        rank = int(tokens[2])
        torsion: tuple[int, ...] = ()
        if len(tokens) > 3:
            if tokens[3] != "torsion" or len(tokens) != 5:
                raise RecipeSyntaxError("expected: torsion d1,d2,...", line)
            torsion = tuple(int(x) for x in tokens[4].split(","))
        return ("h1", rank, torsion)
    if kind == "e_sigma":
        if len(tokens) != 3:
            raise RecipeSyntaxError("expected: assert e_sigma E SIGMA", line)
        return ("e_sigma", int(tokens[1]), int(tokens[2]))
    if kind == "freedman":
        if len(tokens) != 3:
            raise RecipeSyntaxError("expected: assert freedman M N", line)
        return ("freedman", int(tokens[1]), int(tokens[2]))
    if kind == "word_trivial":
        if len(tokens) < 3:
            raise RecipeSyntaxError("expected: assert word_trivial VAR WORD", line)
        return ("word_trivial", tokens[1], " ".join(tokens[2:]))
    raise RecipeSyntaxError(f"unknown assertion kind {kind!r}", line)


def serialize_recipe(recipe: TextRecipe) -> str:
    """Canonical text: fixed ordering and spacing; parse(serialize(r)) == r."""
    lines = [f"recipe {recipe.name}"]
    for key in recipe.params:
        lines.append(f"param {key} default {recipe.params[key]}")
    for step in recipe.steps:
        lines.append(_serialize_step(step))
    for spec in recipe.raw_assertions:
        lines.append(_serialize_assertion(spec))
    return "\n".join(lines) + "\n"


def _serialize_step(step: Step) -> str:
    if isinstance(step, BlockStep):
        return f"block {step.block} as {step.var}"
    if isinstance(step, Sum2Step):
        flags = (" quotient" if step.quotient else "") + (
            " parallel" if step.parallel else ""
        )
        if isinstance(step.gluing, tuple):
            gluing = "inline(" + ";".join(step.gluing[1]) + ")"
        else:
            gluing = str(step.gluing)
        return (
            f"sum2 {step.avar}.{step.asurf} {step.bvar}.{step.bsurf} "
            f"map {gluing}{flags}"
        )
    if isinstance(step, SumTStep):
        m_text = step.gluing.images[0].format(("m", "l"))
        l_text = step.gluing.images[1].format(("m", "l"))
        return (
            f"sumT {step.lvar}.{step.ltorus} {step.rvar}.{step.rtorus} "
            f"map inline({m_text};{l_text})"
        )
    if isinstance(step, SurgeryStep):
        return (
            f"surgery {step.var}.{step.torus} p {step.p} q {step.q} "
            f"dir m^{step.a}*l^{step.b}"
        )
    if isinstance(step, FillStep):
        return f"fill {step.var}.{step.piece}"
    if isinstance(step, BlowupStep):
        return f"blowup {step.var}" + (f" on {step.on}" if step.on else "")
    if isinstance(step, CertifyStep):
        return f"certify {step.var}.{step.surface}"
    raise RecipeError(f"step {step!r} has no text form")


def _serialize_assertion(spec: tuple) -> str:
    kind = spec[0]
    if kind == "pi1":
        claim, args = spec[1], dict(spec[2])
        if "rank" in args:
            return f"assert pi1 {claim} {args['rank']}"
        if "order" in args:
            return f"assert pi1 finite-order {args['order']}"
        return f"assert pi1 {claim}"
    if kind == "h1":
        rank, torsion = spec[1], spec[2]
        text = f"assert h1 rank {rank}"
        if torsion:
            text += " torsion " + ",".join(str(d) for d in torsion)
        return text
    if kind == "e_sigma":
        return f"assert e_sigma {spec[1]} {spec[2]}"
    if kind == "freedman":
        return f"assert freedman {spec[1]} {spec[2]}"
    if kind == "word_trivial":
        return f"assert word_trivial {spec[1]} {spec[2]}"
    raise RecipeError(f"assertion {spec!r} has no text form")
