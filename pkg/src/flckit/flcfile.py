"""Text format for controller definitions (`.flc` files).

Line-oriented grammar, whitespace-separated tokens, `#` starts a comment,
blank lines are ignored, sections in fixed order::

    controller <ident>
    settings tnorm <min|product> resolution <int> fuzzification <singleton | triangular <positive-real>>
    input <ident> range <real> <real>
    term <ident> <tri a b c | trap a b c d>     # attaches to the most recent input/output
    output <ident> range <real> <real>
    rule if <var> is <term> [and <var> is <term>]... then <var> is <term> [, <var> is <term>]...

`parse` is total: any byte input yields either a definition or a list of
line-numbered diagnostics, never an exception. `serialize` emits a canonical
form that `parse` reconstructs field-identically.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

import numpy as np

from .engine import DefinitionError, LinguisticVariable, Rule, RuleBase
from .membership import MembershipFunction, Triangular, Trapezoidal, Universe

ERROR = "Error"
WARNING = "Warning"

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_NUMBER_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\Z")
_INT_RE = re.compile(r"\d+\Z")

MAX_RESOLUTION = 1_000_000


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # ERROR or WARNING
    line: int
    message: str

    def __str__(self) -> str:
        return f"{self.severity} line {self.line}: {self.message}"


@dataclass(frozen=True)
class Settings:
    """Engine configuration carried by a definition file."""

    tnorm: str = "min"  # "min" | "product"
    resolution: int = 201
    fuzzification: str = "singleton"  # "singleton" | "triangular"
    halfwidth: float | None = None  # required iff fuzzification is triangular

    def __post_init__(self) -> None:
        if self.tnorm not in ("min", "product"):
            raise ValueError(f"unknown t-norm {self.tnorm!r}")
        if not 2 <= self.resolution <= MAX_RESOLUTION:
            raise ValueError(f"resolution must be in [2, {MAX_RESOLUTION}]")
        if self.fuzzification == "singleton":
            if self.halfwidth is not None:
                raise ValueError("singleton fuzzification takes no halfwidth")
        elif self.fuzzification == "triangular":
            if self.halfwidth is None or not self.halfwidth > 0:
                raise ValueError("triangular fuzzification needs a positive halfwidth")
        else:
            raise ValueError(f"unknown fuzzification {self.fuzzification!r}")


@dataclass(frozen=True)
class ControllerDefinition:
    """A named, validated controller: variables, rules, and settings."""

    name: str
    rule_base: RuleBase
    settings: Settings

    def __post_init__(self) -> None:
        names = [self.name]
        for var in self.rule_base.inputs + self.rule_base.outputs:
            names.append(var.name)
            names.extend(var.terms)
        for n in names:
            if not _IDENT_RE.match(n):
                raise DefinitionError(f"{n!r} is not a valid identifier")

    @property
    def inputs(self) -> list[LinguisticVariable]:
        return self.rule_base.inputs

    @property
    def outputs(self) -> list[LinguisticVariable]:
        return self.rule_base.outputs

    @property
    def rules(self) -> list[Rule]:
        return self.rule_base.rules


def _fmt_num(x: float) -> str:
    # shortest exact decimal: integral values drop the fraction, the rest
    # rely on repr's round-trip guarantee
    if abs(x) < 1e16 and x == int(x):
        return str(int(x))
    return repr(float(x))


def _fmt_mf(mf: MembershipFunction) -> str:
    if isinstance(mf, Triangular):
        return f"tri {_fmt_num(mf.a)} {_fmt_num(mf.b)} {_fmt_num(mf.c)}"
    return f"trap {_fmt_num(mf.a)} {_fmt_num(mf.b)} {_fmt_num(mf.c)} {_fmt_num(mf.d)}"


def serialize(defn: ControllerDefinition) -> str:
    """Canonical text form; deterministic, and parse(serialize(d)) == d."""
    s = defn.settings
    fuzz = "singleton" if s.fuzzification == "singleton" else (
        f"triangular {_fmt_num(s.halfwidth)}"
    )
    lines = [
        f"controller {defn.name}",
        f"settings tnorm {s.tnorm} resolution {s.resolution} fuzzification {fuzz}",
    ]
    for kind, variables in (("input", defn.inputs), ("output", defn.outputs)):
        for var in variables:
            lines.append(
                f"{kind} {var.name} range {_fmt_num(var.universe.lo)}"
                f" {_fmt_num(var.universe.hi)}"
            )
            for tname, mf in var.terms.items():
                lines.append(f"term {tname} {_fmt_mf(mf)}")
    for rule in defn.rules:
        ant = " and ".join(f"{v} is {t}" for v, t in rule.antecedent.items())
        con = ", ".join(f"{v} is {t}" for v, t in rule.consequent.items())
        lines.append(f"rule if {ant} then {con}")
    return "\n".join(lines) + "\n"


class _Parser:
    """Single-pass line parser collecting diagnostics instead of raising."""

    def __init__(self) -> None:
        self.diags: list[Diagnostic] = []
        self.name: str | None = None
        self.settings: Settings | None = None
        self.inputs: list[LinguisticVariable] = []
        self.outputs: list[LinguisticVariable] = []
        self.rules: list[Rule] = []
        self.stage = "controller"  # -> settings -> inputs -> outputs -> rules
        self.current: dict | None = None  # variable under construction
        self.input_map: dict[str, LinguisticVariable] = {}
        self.output_map: dict[str, LinguisticVariable] = {}
        self.last_line = 1

    def error(self, line: int, message: str) -> None:
        self.diags.append(Diagnostic(ERROR, line, message))

    def _number(self, tok: str, line: int, what: str) -> float | None:
        if not _NUMBER_RE.match(tok):
            self.error(line, f"{what}: {tok!r} is not a number")
            return None
        value = float(tok)
        if not math.isfinite(value):
            self.error(line, f"{what}: {tok!r} is out of range")
            return None
        return value

    def _ident(self, tok: str, line: int, what: str) -> str | None:
        if not _IDENT_RE.match(tok):
            self.error(line, f"{what}: {tok!r} is not a valid identifier")
            return None
        return tok

    def _close_variable(self) -> None:
        if self.current is None:
            return
        var, self.current = self.current, None
        if not var["terms"]:
            self.error(var["line"], f"variable {var['name']!r} has no terms")
            return
        lv = LinguisticVariable(
            var["name"], var["universe"], var["terms"], line=var["line"]
        )
        if var["kind"] == "input":
            self.inputs.append(lv)
            self.input_map[lv.name] = lv
        else:
            self.outputs.append(lv)
            self.output_map[lv.name] = lv

    def feed(self, lineno: int, tokens: list[str]) -> None:
        self.last_line = lineno
        keyword = tokens[0]
        handler = {
            "controller": self._on_controller,
            "settings": self._on_settings,
            "input": self._on_variable,
            "output": self._on_variable,
            "term": self._on_term,
            "rule": self._on_rule,
        }.get(keyword)
        if handler is None:
            self.error(lineno, f"unknown keyword {keyword!r}")
            return
        handler(lineno, tokens)

    def _on_controller(self, lineno: int, tokens: list[str]) -> None:
        if self.stage != "controller":
            self.error(lineno, "duplicate or misplaced 'controller' line")
            return
        if len(tokens) != 2:
            self.error(lineno, "expected: controller <name>")
            return
        self.name = self._ident(tokens[1], lineno, "controller name")
        self.stage = "settings"

    def _on_settings(self, lineno: int, tokens: list[str]) -> None:
        if self.stage != "settings":
            self.error(lineno, "'settings' must follow the controller line, once")
            return
        self.stage = "inputs"
        shape_ok = (
            len(tokens) >= 7
            and tokens[1] == "tnorm"
            and tokens[3] == "resolution"
            and tokens[5] == "fuzzification"
        )
        if not shape_ok:
            self.error(
                lineno,
                "expected: settings tnorm <min|product> resolution <int>"
                " fuzzification <singleton | triangular <halfwidth>>",
            )
            return
        if tokens[2] not in ("min", "product"):
            self.error(lineno, f"unknown t-norm {tokens[2]!r}")
            return
        if not _INT_RE.match(tokens[4]):
            self.error(lineno, f"resolution: {tokens[4]!r} is not an integer")
            return
        resolution = int(tokens[4])
        if not 2 <= resolution <= MAX_RESOLUTION:
            self.error(lineno, f"resolution must be in [2, {MAX_RESOLUTION}]")
            return
        halfwidth = None
        if tokens[6] == "singleton":
            if len(tokens) != 7:
                self.error(lineno, "singleton fuzzification takes no arguments")
                return
        elif tokens[6] == "triangular":
            if len(tokens) != 8:
                self.error(lineno, "triangular fuzzification needs a halfwidth")
                return
            halfwidth = self._number(tokens[7], lineno, "halfwidth")
            if halfwidth is None:
                return
            if not halfwidth > 0:
                self.error(lineno, "halfwidth must be positive")
                return
        else:
            self.error(lineno, f"unknown fuzzification {tokens[6]!r}")
            return
        self.settings = Settings(tokens[2], resolution, tokens[6], halfwidth)

    def _on_variable(self, lineno: int, tokens: list[str]) -> None:
        kind = tokens[0]
        if kind == "input" and self.stage not in ("inputs",):
            self.error(lineno, f"'input' not allowed in the {self.stage} section")
            return
        if kind == "output" and self.stage not in ("inputs", "outputs"):
            self.error(lineno, f"'output' not allowed in the {self.stage} section")
            return
        if len(tokens) != 5 or tokens[2] != "range":
            self.error(lineno, f"expected: {kind} <name> range <lo> <hi>")
            return
        self._close_variable()
        if kind == "output":
            self.stage = "outputs"
        name = self._ident(tokens[1], lineno, f"{kind} name")
        lo = self._number(tokens[3], lineno, "range low bound")
        hi = self._number(tokens[4], lineno, "range high bound")
        if name is None or lo is None or hi is None:
            return
        if name in self.input_map or name in self.output_map:
            self.error(lineno, f"duplicate variable name {name!r}")
            return
        if not lo < hi:
            self.error(lineno, f"range requires lo < hi, got {tokens[3]} {tokens[4]}")
            return
        self.current = {
            "kind": kind,
            "name": name,
            "universe": Universe(lo, hi),
            "terms": {},
            "line": lineno,
        }

    def _on_term(self, lineno: int, tokens: list[str]) -> None:
        if self.current is None:
            self.error(lineno, "'term' must follow an input or output line")
            return
        if len(tokens) < 3 or tokens[2] not in ("tri", "trap"):
            self.error(lineno, "expected: term <name> <tri a b c | trap a b c d>")
            return
        arity = 3 if tokens[2] == "tri" else 4
        if len(tokens) != 3 + arity:
            self.error(lineno, f"'{tokens[2]}' takes {arity} breakpoints")
            return
        name = self._ident(tokens[1], lineno, "term name")
        if name is None:
            return
        if name in self.current["terms"]:
            self.error(
                lineno, f"duplicate term {name!r} on {self.current['name']!r}"
            )
            return
        points = [self._number(t, lineno, "breakpoint") for t in tokens[3:]]
        if any(p is None for p in points):
            return
        try:
            mf = Triangular(*points) if arity == 3 else Trapezoidal(*points)
        except ValueError as exc:
            self.error(lineno, str(exc))
            return
        universe = self.current["universe"]
        lo, hi = mf.support
        if hi < universe.lo or lo > universe.hi:
            self.error(
                lineno,
                f"term {name!r} lies outside [{_fmt_num(universe.lo)},"
                f" {_fmt_num(universe.hi)}]",
            )
            return
        self.current["terms"][name] = mf

    def _on_rule(self, lineno: int, tokens: list[str]) -> None:
        if self.stage not in ("outputs", "rules"):
            self.error(lineno, "rules must follow the output variables")
            return
        self._close_variable()
        self.stage = "rules"
        if len(tokens) < 2 or tokens[1] != "if":
            self.error(lineno, "expected: rule if <var> is <term> ... then ...")
            return

        def clause(i: int) -> tuple[str, str, int] | None:
            if i + 2 >= len(tokens) or tokens[i + 1] != "is":
                self.error(lineno, "malformed rule: expected '<var> is <term>'")
                return None
            return tokens[i], tokens[i + 2], i + 3

        antecedent: dict[str, str] = {}
        i = 2
        while True:
            parsed = clause(i)
            if parsed is None:
                return
            vname, tname, i = parsed
            var = self.input_map.get(vname)
            if var is None:
                self.error(lineno, f"unknown input variable {vname!r}")
                return
            if tname not in var.terms:
                self.error(lineno, f"unknown term {tname!r} on variable {vname!r}")
                return
            if vname in antecedent:
                self.error(lineno, f"variable {vname!r} appears twice in antecedent")
                return
            antecedent[vname] = tname
            if i >= len(tokens) or tokens[i] not in ("and", "then"):
                self.error(lineno, "malformed rule: expected 'and' or 'then'")
                return
            if tokens[i] == "then":
                i += 1
                break
            i += 1

        missing = [v.name for v in self.inputs if v.name not in antecedent]
        if missing:
            self.error(
                lineno,
                "rule must mention every input variable"
                f" (missing: {', '.join(missing)})",
            )
            return

        consequent: dict[str, str] = {}
        while True:
            parsed = clause(i)
            if parsed is None:
                return
            vname, tname, i = parsed
            var = self.output_map.get(vname)
            if var is None:
                self.error(lineno, f"unknown output variable {vname!r}")
                return
            if tname not in var.terms:
                self.error(lineno, f"unknown term {tname!r} on variable {vname!r}")
                return
            if vname in consequent:
                self.error(lineno, f"variable {vname!r} appears twice in consequent")
                return
            consequent[vname] = tname
            if i >= len(tokens):
                break
            if tokens[i] != ",":
                self.error(lineno, "malformed rule: expected ',' between consequents")
                return
            i += 1
        self.rules.append(Rule(antecedent, consequent, line=lineno))

    def finish(self) -> ControllerDefinition | None:
        self._close_variable()
        if self.name is None:
            self.error(self.last_line, "missing 'controller' line")
        if self.settings is None:
            self.error(self.last_line, "missing 'settings' line")
        if not self.inputs:
            self.error(self.last_line, "no input variables declared")
        if not self.outputs:
            self.error(self.last_line, "no output variables declared")
        if not self.rules:
            self.error(self.last_line, "no rules declared")
        if any(d.severity == ERROR for d in self.diags):
            return None
        try:
            return ControllerDefinition(
                self.name,
                RuleBase(self.inputs, self.outputs, self.rules),
                self.settings,
            )
        except ValueError as exc:  # belt and braces; per-line checks come first
            self.error(self.last_line, str(exc))
            return None


def parse(
    text: str | bytes,
) -> tuple[ControllerDefinition | None, list[Diagnostic]]:
    """Parse definition text into (definition, diagnostics).

    The definition is None whenever any Error-severity diagnostic was
    produced. Semantic checks beyond structure (rule conflicts, coverage)
    live in `validate`.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            line = text[: exc.start].count(b"\n") + 1
            return None, [Diagnostic(ERROR, line, "invalid UTF-8")]
    parser = _Parser()
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].replace(",", " , ").split()
        if tokens:
            parser.feed(lineno, tokens)
    defn = parser.finish()
    return defn, parser.diags


def validate(defn: ControllerDefinition) -> list[Diagnostic]:
    """Semantic diagnostics for a structurally sound definition.

    Errors: rules sharing an antecedent but disagreeing on a consequent, and
    coverage gaps (some universe point where every term of a variable is 0,
    sampled at the configured resolution). Warnings: terms no rule uses, and
    input-term combinations (sampled at term peaks) for which no rule fires.
    """
    diags: list[Diagnostic] = []

    seen: dict[tuple, tuple[dict[str, str], int]] = {}
    for idx, rule in enumerate(defn.rules):
        key = tuple(sorted(rule.antecedent.items()))
        if key in seen:
            merged, first_line = seen[key]
            for ov, term in rule.consequent.items():
                if ov in merged and merged[ov] != term:
                    diags.append(
                        Diagnostic(
                            ERROR,
                            rule.line,
                            f"rule conflicts with line {first_line}: same"
                            f" antecedent, different {ov!r} consequents",
                        )
                    )
            merged.update(
                {ov: t for ov, t in rule.consequent.items() if ov not in merged}
            )
        else:
            seen[key] = (dict(rule.consequent), rule.line)

    resolution = defn.settings.resolution
    for var in defn.inputs + defn.outputs:
        xs = var.universe.grid(resolution)
        cover = np.zeros(resolution)
        for mf in var.terms.values():
            np.maximum(cover, mf.sample(xs), out=cover)
        gaps = np.flatnonzero(cover == 0.0)
        if gaps.size:
            diags.append(
                Diagnostic(
                    ERROR,
                    var.line,
                    f"coverage gap in {var.name!r}: no term covers"
                    f" x = {xs[gaps[0]]:g}",
                )
            )

    used_in = {v.name: set() for v in defn.inputs}
    used_out = {v.name: set() for v in defn.outputs}
    for rule in defn.rules:
        for vname, tname in rule.antecedent.items():
            used_in[vname].add(tname)
        for vname, tname in rule.consequent.items():
            used_out[vname].add(tname)
    for var in defn.inputs:
        for tname in var.terms:
            if tname not in used_in[var.name]:
                diags.append(
                    Diagnostic(
                        WARNING,
                        var.line,
                        f"term {tname!r} of {var.name!r} is never used by any rule",
                    )
                )
    for var in defn.outputs:
        for tname in var.terms:
            if tname not in used_out[var.name]:
                diags.append(
                    Diagnostic(
                        WARNING,
                        var.line,
                        f"term {tname!r} of {var.name!r} is never used by any rule",
                    )
                )

    last_rule_line = defn.rules[-1].line
    term_choices = [
        [(var, tname, mf.peak) for tname, mf in var.terms.items()]
        for var in defn.inputs
    ]
    for combo in itertools.product(*term_choices):
        point = {var.name: peak for var, _, peak in combo}
        fired = any(
            min(
                var.terms[rule.antecedent[var.name]](point[var.name])
                for var in defn.inputs
            )
            > 0.0
            for rule in defn.rules
        )
        if not fired:
            label = ", ".join(f"{var.name}={tname}" for var, tname, _ in combo)
            diags.append(
                Diagnostic(
                    WARNING, last_rule_line, f"no rule fires near {label}"
                )
            )
    return diags
