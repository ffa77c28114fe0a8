"""Growing a subword vocabulary with domain tokens discovered in a corpus.

A pretrained tokenizer knows English but not code-comment jargon, so
corpus words missing from its vocabulary splinter into many pieces or
become UNK. Discovery collects every word that appears in strictly more
than 25% of the projects and is not already a whole-word base token; after
an optional denylist pass the survivors are appended to the base
vocabulary. Tokenization is greedy longest-prefix matching with "##"
continuations.
"""

import tempfile
from pathlib import Path

from satdkit import (
    CorpusCollection,
    Comment,
    Label,
    ProjectDataset,
    apply_denylist,
    augment_vocabulary,
    char_base_vocabulary,
    discover_candidate_tokens,
    split_identifiers,
    tokenize,
)

# eight synthetic projects; "classpath" is corpus jargon appearing in most of
# them, "ns" is a flawed extraction appearing widely too, and "rarity" shows
# up in just one project (below the 25% bar)
projects = []
for i in range(8):
    texts = ["// set the classpath here", "// plain prose comment"]
    if i < 6:
        texts.append("// ns is a flawed fragment")
    if i == 0:
        texts.append("// rarity appears once")
    comments = [
        Comment(j, f"proj{i}", t, Label.NON_SATD, "WITHOUT_CLASSIFICATION")
        for j, t in enumerate(texts)
    ]
    projects.append(ProjectDataset.from_comments(f"proj{i}", comments))
collection = CorpusCollection("demo", tuple(projects))

base = char_base_vocabulary()  # stand-in base: specials + printable ASCII chars
print(f"base vocabulary size: {base.size}")

candidates = discover_candidate_tokens(collection, base, threshold=0.25)
print("\ndiscovered candidates (word, projects containing it, fraction):")
for c in candidates:
    print(f"  {c.token!r:16} {c.project_count}  {c.project_fraction:.3f}")
assert all(c.token != "rarity" for c in candidates), "1 of 8 is under the bar"

denylist = Path(tempfile.mkdtemp()) / "denylist.txt"
denylist.write_text("ns\n", encoding="utf-8")
finals = apply_denylist(candidates, denylist)
print(f"\nafter denylisting 'ns': {len(candidates)} -> {len(finals)} candidates")

vocab = augment_vocabulary(base, finals)
print(f"augmented vocabulary size: {base.size} + {len(finals)} = {vocab.size}")

text = split_identifiers("// classpath rarity")
for v, name in ((base, "base"), (vocab, "augmented")):
    seq = tokenize(v, text)
    pieces = [v.tokens[i] for i in seq.ids]
    print(f"\n{name} tokenization of {text.text!r}:")
    print(f"  {pieces}")
print("\n'classpath' is one token after augmentation; 'rarity' still spells out.")
