#!/usr/bin/env python3
"""Writes the group corpus: every group of order < 100 from the SmallGroups library,
a handful of larger groups, and GAP's own invariants for each as an independent oracle.

Needs a GAP with the smallgrp and ctbllib packages. Set GAP to the executable (extra
arguments allowed, e.g. GAP="/opt/gap/gap -l /opt/gap"); default is "gap".

    python3 corpus/generate.py
"""
import json
import os
import re
import shlex
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
MAX_ORDER = 100
MAX_SUBGROUPS = 8

EXTRA = [
    ("S5", "SymmetricGroup(5)"),
    ("SL(2,5)", "SL(2,5)"),
    ("PSL(2,7)", "PSL(2,7)"),
    ("PGL(2,7)", "PGL(2,7)"),
    ("PSL(2,8)", "PSL(2,8)"),
    ("PSL(2,11)", "PSL(2,11)"),
    ("A6", "AlternatingGroup(6)"),
    ("S6", "SymmetricGroup(6)"),
    ("PGL(2,9)", "PGL(2,9)"),
    ("M10", "MathieuGroup(10)"),
    ("Aut(A6)", "PGammaL(2,9)"),
    ("S4xS3", "DirectProduct(SymmetricGroup(4), SymmetricGroup(3))"),
    ("2^4:A5", "SmallGroup(960,11357)"),
]

GAP_PRELUDE = r"""
OnBreak := function() FORCE_QUIT_GAP(1); end;
Jstr := s -> Concatenation("\"", s, "\"");
Jlist := l -> Concatenation("[", JoinStringsWithSeparator(List(l, String), ","), "]");
PermDegree := H -> Maximum(1, LargestMovedPoint(H));
PermImages := function(g, d) return List(ListPerm(g, d), i -> i - 1); end;
Gens := function(H, d)
  local gens;
  gens := Filtered(SmallGeneratingSet(H), g -> g <> ());
  return Concatenation("[", JoinStringsWithSeparator(List(gens, g -> Jlist(PermImages(g, d))), ","), "]");
end;
Oracle := function(G)
  local n, t, irr, ps, out, p, pb, sizes, pa, hasc;
  n := Size(G);
  t := CharacterTable(G);
  irr := Irr(t);
  ps := PrimeDivisors(n);
  out := [];
  Add(out, Concatenation("\"classes\":", String(NrConjugacyClasses(t))));
  Add(out, Concatenation("\"degrees\":", Jlist(SortedList(List(irr, x -> x[1])))));
  Add(out, Concatenation("\"conductors\":", Jlist(SortedList(List(irr, Conductor)))));
  Add(out, Concatenation("\"exponent\":", String(Exponent(G))));
  for p in ps do
    pb := PrimeBlocks(t, p);
    sizes := List([1..Length(pb.defect)], b -> [Number(pb.block, x -> x = b), pb.defect[b]]);
    pa := p ^ PValuation(n, p);
    hasc := ForAny(NormalSubgroups(G), N -> Size(N) = n / pa);
    Add(out, Concatenation("\"p", String(p), "\":{\"blocks\":", String(SortedList(sizes)),
      ",\"principal_size\":", String(Number(pb.block, x -> x = pb.block[1])),
      ",\"normal_complement\":", String(hasc), "}"));
  od;
  return Concatenation("{", JoinStringsWithSeparator(out, ","), "}");
end;
Emit := function(name, G, out)
  local iso, H, d, normals, N, maxs, subs, i;
  iso := IsomorphismPermGroup(G);
  H := Image(iso);
  if Size(H) > 1 then H := Image(SmallerDegreePermutationRepresentation(H)); fi;
  d := PermDegree(H);
  normals := Filtered(NormalSubgroups(H), N -> Size(N) > 1 and Size(N) < Size(H));
  SortBy(normals, N -> -Size(N));
  maxs := List(ConjugacyClassesMaximalSubgroups(H), Representative);
  SortBy(maxs, M -> -Size(M));
  subs := [];
  for i in [1..Minimum(Length(maxs), MAXSUB)] do
    Add(subs, Concatenation("{\"name\":\"M", String(i), "\",\"generators\":", Gens(maxs[i], d), "}"));
  od;
  PrintTo(out, "{\"name\":", Jstr(name), ",\"degree\":", d, ",\"generators\":", Gens(H, d));
  if Length(normals) > 0 then
    PrintTo(out, ",\"normal\":", Gens(normals[1], d));
  fi;
  PrintTo(out, ",\"subgroups\":[", JoinStringsWithSeparator(subs, ","), "]");
  PrintTo(out, ",\"structure\":", Jstr(StructureDescription(H)));
  PrintTo(out, ",\"oracle\":", Oracle(H), "}\n");
end;
"""


def gap_command():
    return shlex.split(os.environ.get("GAP", "gap")) + ["-q", "-A", "-b"]


def run_gap(body, out):
    script = GAP_PRELUDE.replace("MAXSUB", str(MAX_SUBGROUPS)) + body + "\nQUIT;\n"
    subprocess.run(
        gap_command(),
        input=script.encode(),
        check=True,
        stdout=subprocess.DEVNULL,
        env={**os.environ, "TERM": "dumb"},
    )
    return [json.loads(line) for line in Path(out).read_text().splitlines() if line.strip()]


def slug(name):
    keep = "".join(c if c.isalnum() else "_" for c in name.lower())
    return "_".join(filter(None, keep.split("_")))


def dumps(obj, **kw):
    """JSON with each innermost list of numbers kept on one line."""
    text = json.dumps(obj, indent=1, **kw)
    return re.sub(r"\[[\d,\s]*\]", lambda m: re.sub(r"\s+", "", m.group()).replace(",", ", "), text)


def write(records, directory):
    directory.mkdir(parents=True, exist_ok=True)
    for old in directory.glob("*.json"):
        old.unlink()
    oracle = {}
    for rec in records:
        oracle[rec["name"]] = {"structure": rec.pop("structure"), **rec.pop("oracle")}
        if not rec.get("subgroups"):
            rec.pop("subgroups", None)
        (directory / f"{slug(rec['name'])}.json").write_text(dumps(rec) + "\n")
    return oracle


def main():
    tmp = HERE / ".gap-out.txt"
    small = f"""
out := OutputTextFile("{tmp}", false);
SetPrintFormattingStatus(out, false);
for n in [1..{MAX_ORDER - 1}] do
  for k in [1..NrSmallGroups(n)] do
    Emit(Concatenation("G", String(n), "_", String(k)), SmallGroup(n, k), out);
  od;
od;
CloseStream(out);
"""
    records = run_gap(small, tmp)
    # zero-pad so that file order follows (order, id)
    for rec in records:
        n, k = rec["name"][1:].split("_")
        rec["name"] = f"G{int(n):03d}_{int(k):03d}"
    oracle = write(records, HERE / "groups")

    extra = (
        f'out := OutputTextFile("{tmp}", false);\nSetPrintFormattingStatus(out, false);\n'
        + "".join(f'Emit("{name}", {expr}, out);\n' for name, expr in EXTRA)
        + "CloseStream(out);\n"
    )
    oracle.update(write(run_gap(extra, tmp), HERE / "extra"))
    tmp.unlink()
    (HERE / "oracle.json").write_text(dumps(oracle, sort_keys=True) + "\n")
    print(f"{len(records)} small groups, {len(EXTRA)} extra", file=sys.stderr)


if __name__ == "__main__":
    main()
