"""Library investment metrics for C-family source trees.

Measures how much Halstead volume a program avoids writing by calling into a
library, alongside line-based reuse ratios and cyclomatic complexity.
"""

__version__ = "0.1.0"

from .lexicon import (  # noqa: E402
    BUILTIN_PROFILES,
    CPP_THESIS,
    JAVA,
    LanguageProfile,
    LexError,
    ProfileError,
    Token,
    TokenKind,
    detect_io_operands,
    load_profile,
    strip_comments,
    tokenize,
)
from .census import HalsteadReport, TokenCensus, classify, halstead, merge, volume  # noqa: E402
from .linkage import (  # noqa: E402
    LibraryComponent,
    VolumeTriple,
    VrMode,
    detect_usage,
    extract_components,
    model_params,
    used,
)
from .metrics import (  # noqa: E402
    ControlCounts,
    InvestmentReport,
    ReuseFigures,
    UndefinedMetricError,
    cc_from_decisions,
    cc_from_graph,
    investment,
    lil,
    lir,
    ps,
    reuse_density,
    reuse_frequency,
    reuse_level,
    reuse_percent,
    threshold_flag,
)
from .corpus import (  # noqa: E402
    CorpusReport,
    ProjectBundle,
    ProjectOptions,
    analyze,
    count_loc,
    emit,
    load_manifest,
    load_project,
    run_corpus,
)
