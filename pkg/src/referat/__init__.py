"""Structure-aware extractive summarization for Ukrainian and English texts."""

__version__ = "0.1.0"

from .docmodel import (
    Block,
    Document,
    Paragraph,
    RawDocument,
    SentenceUnit,
    Token,
    Zone,
    parse_docjson,
    parse_plaintext,
    segment,
    tokenize,
)
from .recognizer import (
    Element,
    RecognitionRule,
    RuleTable,
    default_rule_table,
    match_rule,
    recognize,
)
from .weighting import (
    CueLexicon,
    KeywordRecord,
    WeightBreakdown,
    WeightContext,
    addterm,
    cuephrase,
    derive_keywords,
    location,
    statterm,
    weigh,
    word_weight,
)
from .selector import (
    Candidate,
    order_output,
    rank,
    select_summary,
    similarity,
)
from .fusion import (
    ConsolidatedRepository,
    FusionResult,
    RelationGraph,
    extract_relations,
    fuse,
)
from .store import (
    DocumentAnalysis,
    KeywordRow,
    SentenceRecord,
    WordSentenceLink,
    build_analysis,
    load_analysis,
    save_analysis,
)
from .pipeline import PipelineConfig, SummaryOutput, dump_defaults, run

__all__ = [
    "__version__",
    "Block",
    "Document",
    "Paragraph",
    "RawDocument",
    "SentenceUnit",
    "Token",
    "Zone",
    "parse_docjson",
    "parse_plaintext",
    "segment",
    "tokenize",
    "Element",
    "RecognitionRule",
    "RuleTable",
    "default_rule_table",
    "match_rule",
    "recognize",
    "CueLexicon",
    "KeywordRecord",
    "WeightBreakdown",
    "WeightContext",
    "addterm",
    "cuephrase",
    "derive_keywords",
    "location",
    "statterm",
    "weigh",
    "word_weight",
    "Candidate",
    "order_output",
    "rank",
    "select_summary",
    "similarity",
    "ConsolidatedRepository",
    "FusionResult",
    "RelationGraph",
    "extract_relations",
    "fuse",
    "DocumentAnalysis",
    "KeywordRow",
    "SentenceRecord",
    "WordSentenceLink",
    "build_analysis",
    "load_analysis",
    "save_analysis",
    "PipelineConfig",
    "SummaryOutput",
    "dump_defaults",
    "run",
]
