"""Medieval Latin tagging, lemmatization and error analysis."""

from ._core import (
    MedlatError,
    align,
    apply_edit_script,
    corpus_stats,
    derive_edit_script,
    evaluate,
    lemmatize,
    mine_confusions,
    normalize,
    plan_counts,
    roundtrip,
    run_cli,
    tag,
    train_lemmatizer,
    train_tagger,
    validate_conllu,
    validate_stats,
)

__all__ = [
    "MedlatError",
    "align",
    "apply_edit_script",
    "corpus_stats",
    "derive_edit_script",
    "evaluate",
    "lemmatize",
    "mine_confusions",
    "normalize",
    "plan_counts",
    "roundtrip",
    "run_cli",
    "tag",
    "train_lemmatizer",
    "train_tagger",
    "validate_conllu",
    "validate_stats",
]
