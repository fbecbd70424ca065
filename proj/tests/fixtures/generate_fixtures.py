#!/usr/bin/env python3
"""Regenerates the synthetic CoNLL-U fixtures used by the test suites.

All output is deterministic (fixed seeds). Run from anywhere:

    python3 tests/fixtures/generate_fixtures.py

Outputs:
    conllu/*.conllu     canonical round-trip fixtures
    toy/separable.conllu  suffix-determined toy language, 500 sentences
    mini/               five genre sets, two reference treebanks, registry and
                        scenario config for end-to-end runs
"""

import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))

CASES = ["Nom", "Gen", "Dat", "Acc", "Abl"]

DECL = {
    "a": (["a", "ae", "ae", "am", "a"], ["ae", "arum", "is", "as", "is"]),
    "us": (["us", "i", "o", "um", "o"], ["i", "orum", "is", "os", "is"]),
    "um": (["um", "i", "o", "um", "o"], ["a", "orum", "is", "a", "is"]),
    "3": ([None, "is", "i", "em", "e"], ["es", "um", "ibus", "es", "ibus"]),
    "3n": ([None, "is", "i", None, "e"], ["a", "um", "ibus", "a", "ibus"]),
}

# lemma, stem, declension, gender
NOUNS = [
    ("porta", "port", "a", "Fem"), ("gratia", "grati", "a", "Fem"),
    ("ecclesia", "ecclesi", "a", "Fem"), ("terra", "terr", "a", "Fem"),
    ("uita", "uit", "a", "Fem"), ("causa", "caus", "a", "Fem"),
    ("anima", "anim", "a", "Fem"), ("uilla", "uill", "a", "Fem"),
    ("sententia", "sententi", "a", "Fem"), ("prouincia", "prouinci", "a", "Fem"),
    ("pecunia", "pecuni", "a", "Fem"), ("littera", "litter", "a", "Fem"),
    ("dominus", "domin", "us", "Masc"), ("populus", "popul", "us", "Masc"),
    ("annus", "ann", "us", "Masc"), ("filius", "fili", "us", "Masc"),
    ("episcopus", "episcop", "us", "Masc"), ("seruus", "seru", "us", "Masc"),
    ("nuntius", "nunti", "us", "Masc"), ("oculus", "ocul", "us", "Masc"),
    ("bellum", "bell", "um", "Neut"), ("templum", "templ", "um", "Neut"),
    ("uerbum", "uerb", "um", "Neut"), ("iudicium", "iudici", "um", "Neut"),
    ("consilium", "consili", "um", "Neut"), ("regnum", "regn", "um", "Neut"),
    ("officium", "offici", "um", "Neut"), ("donum", "don", "um", "Neut"),
    ("rex", "reg", "3", "Masc"), ("ciuitas", "ciuitat", "3", "Fem"),
    ("homo", "homin", "3", "Masc"), ("pars", "part", "3", "Fem"),
    ("lex", "leg", "3", "Fem"), ("pax", "pac", "3", "Fem"),
    ("uirtus", "uirtut", "3", "Fem"), ("dux", "duc", "3", "Masc"),
    ("tempus", "tempor", "3n", "Neut"), ("nomen", "nomin", "3n", "Neut"),
]

PROPNS = [
    ("kinga", "king", "a", "Fem"), ("laurentius", "laurenti", "us", "Masc"),
    ("stanislaus", "stanisla", "us", "Masc"), ("boleslaus", "bolesla", "us", "Masc"),
    ("cracouia", "cracoui", "a", "Fem"), ("polonia", "poloni", "a", "Fem"),
]

ADJS = [("bonus", "bon"), ("magnus", "magn"), ("sanctus", "sanct"),
        ("nouus", "nou"), ("longus", "long"), ("pretiosus", "pretios"),
        ("iustus", "iust"), ("plenus", "plen")]

VERB_ENDINGS = {
    1: ["o", "as", "at", "amus", "atis", "ant"],
    2: ["eo", "es", "et", "emus", "etis", "ent"],
    3: ["o", "is", "it", "imus", "itis", "unt"],
}
VERB_FUT3 = ["am", "es", "et", "emus", "etis", "ent"]

# lemma, stem, conjugation
VERBS = [("laudo", "laud", 1), ("amo", "am", 1), ("porto", "port", 1),
         ("uoco", "uoc", 1), ("narro", "narr", 1), ("oro", "or", 1),
         ("uideo", "uid", 2), ("habeo", "hab", 2), ("debeo", "deb", 2),
         ("teneo", "ten", 2), ("adduco", "adduc", 3), ("dico", "dic", 3),
         ("scribo", "scrib", 3), ("mitto", "mitt", 3), ("rego", "reg", 3)]

ADPS = {"Abl": ["in", "cum", "de", "ex", "sine", "pro"], "Acc": ["ad", "per", "contra"]}
CCONJ = ["et", "sed", "aut", "uel"]
ADVS = ["non", "etiam", "tunc", "ibi", "bene", "semper"]
SYMS = ["A", "B", "CD", "EF", "1amXI", "GH"]
NUMS = [("duo", "duo"), ("tres", "tres"), ("XII", "XII"), ("centum", "centum")]


def noun_form(stem, lemma, decl, case, number):
    sing, plur = DECL[decl]
    idx = CASES.index(case)
    end = (sing if number == "Sing" else plur)[idx]
    if end is None:
        return lemma
    return stem + end


def adj_decl(gender):
    return {"Masc": "us", "Fem": "a", "Neut": "um"}[gender]


def feats_str(d):
    if not d:
        return "_"
    return "|".join(f"{k}={v}" for k, v in sorted(d.items()))


class Tok:
    def __init__(self, form, lemma, upos, feats, xpos="_", misc="_"):
        self.form, self.lemma, self.upos = form, lemma, upos
        self.feats, self.xpos, self.misc = feats, xpos, misc
        self.head, self.deprel = 0, "root"


class Gen:
    def __init__(self, seed, spelling="u", ci=0.0, sym_rate=0.0, propn_rate=0.15):
        self.r = random.Random(seed)
        self.spelling = spelling
        self.ci = ci
        self.sym_rate = sym_rate
        self.propn_rate = propn_rate

    def spell(self, s):
        # reference-treebank style orthography: consonantal v, -ci- spellings
        if self.spelling == "v":
            out = []
            for i, ch in enumerate(s):
                nxt = s[i + 1] if i + 1 < len(s) else ""
                prev = s[i - 1] if i > 0 else ""
                if ch == "u" and nxt in "aeiou" and nxt and (i == 0 or prev in "aeiou"):
                    out.append("v")
                else:
                    out.append(ch)
            s = "".join(out)
        if self.ci and "ti" in s[1:-1] and self.r.random() < self.ci:
            i = s.index("ti", 1)
            if i + 2 < len(s):
                s = s[:i] + "ci" + s[i + 2:]
        return s

    def noun_phrase(self, case, number=None, allow_propn=True):
        r = self.r
        toks = []
        number = number or r.choice(["Sing", "Sing", "Plur"])
        if allow_propn and r.random() < self.propn_rate:
            lemma, stem, decl, gender = r.choice(PROPNS)
            number = "Sing"
            form = noun_form(stem, lemma, decl, case, number)
            form = self.spell(form)
            toks.append(Tok(form.capitalize(), self.spell(lemma), "PROPN",
                            {"Case": case, "Gender": gender, "Number": number}))
            return toks, number
        lemma, stem, decl, gender = r.choice(NOUNS)
        noun = Tok(self.spell(noun_form(stem, lemma, decl, case, number)), self.spell(lemma),
                   "NOUN", {"Case": case, "Gender": gender, "Number": number})
        toks.append(noun)
        if r.random() < 0.4:
            alemma, astem = r.choice(ADJS)
            adecl = adj_decl(gender)
            aform = noun_form(astem, alemma, adecl, case, number)
            adj = Tok(self.spell(aform), self.spell(alemma), "ADJ",
                      {"Case": case, "Degree": "Pos", "Gender": gender, "Number": number})
            toks.append(adj)
        return toks, number

    def verb(self, number):
        r = self.r
        lemma, stem, conj = r.choice(VERBS)
        person = r.choice([1, 3, 3, 3]) if number == "Sing" else 3
        idx = (person - 1) + (0 if number == "Sing" else 3)
        if conj == 3 and r.random() < 0.3:
            form = stem + VERB_FUT3[idx]
            tense = "Fut"
        else:
            form = stem + VERB_ENDINGS[conj][idx]
            tense = "Pres"
        return Tok(self.spell(form), self.spell(lemma), "VERB",
                   {"Mood": "Ind", "Number": number, "Person": str(person),
                    "Tense": tense, "VerbForm": "Fin", "Voice": "Act"})

    def sentence(self):
        r = self.r
        toks = []
        subj, number = self.noun_phrase("Nom")
        subj_head = subj[0]
        for t in subj[1:]:
            t.head_ref, t.deprel = subj_head, "amod"
        subj_head.deprel = "nsubj"
        toks.extend(subj)
        if r.random() < 0.3:
            adv = Tok(r.choice(ADVS), None, "ADV", {})
            adv.lemma = adv.form
            adv.deprel = "advmod"
            toks.append(adv)
        if r.random() < 0.5:
            case = r.choice(["Abl", "Acc"])
            adp = Tok(r.choice(ADPS[case]), None, "ADP", {})
            adp.lemma = adp.form
            np, _ = self.noun_phrase(case)
            adp.head_ref, adp.deprel = np[0], "case"
            np[0].deprel = "obl"
            for t in np[1:]:
                t.head_ref, t.deprel = np[0], "amod"
            toks.append(adp)
            toks.extend(np)
        if self.sym_rate and r.random() < self.sym_rate:
            s = r.choice(SYMS)
            sym = Tok(s, "_", "SYM", {})
            sym.deprel = "appos"
            toks.append(sym)
            if r.random() < 0.5:
                conj = Tok("et", "et", "CCONJ", {})
                s2 = Tok(r.choice(SYMS), "_", "SYM", {})
                conj.head_ref, conj.deprel = s2, "cc"
                s2.head_ref, s2.deprel = sym, "conj"
                toks.extend([conj, s2])
        if r.random() < 0.2:
            nform, nlemma = r.choice(NUMS)
            num = Tok(nform, nlemma, "NUM", {"NumType": "Card"})
            num.deprel = "nummod"
            toks.append(num)
        obj, _ = self.noun_phrase("Acc", allow_propn=False)
        obj[0].deprel = "obj"
        for t in obj[1:]:
            t.head_ref, t.deprel = obj[0], "amod"
        toks.extend(obj)
        verb = self.verb(number)
        verb.deprel = "root"
        toks.append(verb)
        if r.random() < 0.25:
            cc = Tok(r.choice(CCONJ), None, "CCONJ", {})
            cc.lemma = cc.form
            v2 = self.verb(number)
            cc.head_ref, cc.deprel = v2, "cc"
            v2.head_ref, v2.deprel = verb, "conj"
            toks.extend([cc, v2])
        punct = Tok(".", ".", "PUNCT", {})
        punct.deprel = "punct"
        toks.append(punct)
        # resolve heads
        for i, t in enumerate(toks):
            t.id = i + 1
        for t in toks:
            if t is verb:
                t.head = 0
            elif hasattr(t, "head_ref"):
                t.head = t.head_ref.id
            else:
                t.head = verb.id
        toks[-2].misc = "SpaceAfter=No"
        toks[0].form = toks[0].form[0].upper() + toks[0].form[1:]
        return toks


def render(sentences, comments_fn=None):
    out = []
    for si, toks in enumerate(sentences):
        if comments_fn:
            out.extend(comments_fn(si, toks))
        for t in toks:
            cols = [str(t.id), t.form, t.lemma, t.upos, t.xpos, feats_str(t.feats),
                    str(t.head), t.deprel, "_", t.misc]
            out.append("\t".join(cols))
        out.append("")
    return "\n".join(out) + ("\n" if out else "")


def text_of(toks):
    s = ""
    for t in toks:
        s += t.form
        if t.misc != "SpaceAfter=No":
            s += " "
    return s.strip()


def write(path, content):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(content)


def canonical_fixtures():
    variants = [
        dict(spelling="u", sym_rate=0.0),
        dict(spelling="v", sym_rate=0.0),
        dict(spelling="u", sym_rate=0.6),
        dict(spelling="u", ci=0.5),
    ]
    for n in range(24):
        v = variants[n % len(variants)]
        g = Gen(1000 + n, **v)
        count = 1 + (n % 5)
        sents = [g.sentence() for _ in range(count)]
        if n % 3 == 1:
            for t in sents[0]:
                t.xpos = {"NOUN": "n", "VERB": "v", "ADJ": "a", "ADP": "r", "PUNCT": "u"}.get(t.upos, "_")

        def comments(si, toks, n=n):
            c = []
            if n % 6 != 5:
                c.append(f"# sent_id = fx{n:02d}-{si + 1}")
            if n % 2 == 0:
                c.append(f"# text = {text_of(toks)}")
            if n % 4 == 3 and si == 0:
                c.append("# newdoc id = synthetic")
                c.append("# genre = proceedings")
            return c

        write(os.path.join(HERE, "conllu", f"c{n + 1:02d}.conllu"), render(sents, comments))


# ---------------------------------------------------------------- toy language

TOY_CLASSES = [
    ("ax", "NOUN", "Case=Nom|Number=Sing", "a"),
    ("axes", "NOUN", "Case=Nom|Number=Plur", "a"),
    ("om", "NOUN", "Case=Acc|Number=Sing", "a"),
    ("ot", "VERB", "Number=Sing|Person=3", "are"),
    ("otun", "VERB", "Number=Plur|Person=3", "are"),
    ("el", "ADJ", "Degree=Pos", "elis"),
    ("ur", "ADV", "_", "ur"),
    ("ik", "PRON", "PronType=Prs", "ik"),
]


def toy_stem(r):
    cons, vows = "bdfglmnprstv", "aeiou"
    return "".join(r.choice(cons) + r.choice(vows) for _ in range(r.randint(1, 3)))


def toy_corpus():
    r = random.Random(4242)
    lines = []
    for si in range(500):
        lines.append(f"# sent_id = toy-{si + 1}")
        n = r.randint(3, 10)
        for i in range(n):
            suffix, upos, feats, lemma_end = r.choice(TOY_CLASSES)
            stem = toy_stem(r)
            form = stem + suffix
            if upos in ("ADV", "PRON"):
                lemma = form
            else:
                lemma = stem + lemma_end
            lines.append("\t".join([str(i + 1), form, lemma, upos, "_", feats, "_", "_", "_", "_"]))
        lines.append("\t".join([str(n + 1), ".", ".", "PUNCT", "_", "_", "_", "_", "_", "_"]))
        lines.append("")
    write(os.path.join(HERE, "toy", "separable.conllu"), "\n".join(lines) + "\n")


# ---------------------------------------------------------------- mini registry

GENRES = [("Annals", 24, 0.0, 0.0), ("Biography", 30, 0.0, 0.0),
          ("Normative", 26, 0.0, 0.0), ("Proceedings", 34, 0.2, 0.0),
          ("Science", 22, 0.0, 0.5)]


def mini_registry():
    base = os.path.join(HERE, "mini")
    for gi, (name, count, ci, sym) in enumerate(GENRES):
        g = Gen(200 + gi, spelling="u", ci=ci, sym_rate=sym)
        sents = [g.sentence() for _ in range(count)]
        write(os.path.join(base, "efontes", f"{name.lower()}.conllu"),
              render(sents, lambda si, toks, name=name: [f"# sent_id = {name.lower()}-{si + 1}"]))
    ud = [("PROIEL", "v", 0.0, 2), ("LLCT", "u", 0.6, 1)]
    for ui, (name, spelling, ci, parts) in enumerate(ud):
        g = Gen(300 + ui, spelling=spelling, ci=ci)
        for p in range(parts):
            sents = [g.sentence() for _ in range(40)]
            write(os.path.join(base, "ud", f"{name.lower()}-{p + 1}.conllu"),
                  render(sents, lambda si, toks, name=name, p=p: [f"# sent_id = {name.lower()}-{p + 1}-{si + 1}"]))
    registry = ["# Synthetic mini registry: five genre sets and two reference treebanks.", ""]
    for name, *_ in GENRES:
        registry += [f"[{name}]", "kind = efontes_genre", f"paths = efontes/{name.lower()}.conllu", ""]
    for name, *_ in ud:
        registry += [f"[{name}]", "kind = ud_treebank", f"paths = ud/{name.lower()}-*.conllu", ""]
    write(os.path.join(base, "mini.registry"), "\n".join(registry))
    write(os.path.join(base, "scenario.conf"), "\n".join([
        "# All four scenarios over the mini registry.",
        "scenario = baseline, ud_all, ud_plus_specific, ud_plus_efontes",
        "tasks = upos, ufeats, lemma",
        "registry = mini.registry",
        "seed = 7",
        "epochs = 5",
        "validation_fraction = 0.1",
        "output_dir = out",
        "",
    ]))


if __name__ == "__main__":
    canonical_fixtures()
    toy_corpus()
    mini_registry()
