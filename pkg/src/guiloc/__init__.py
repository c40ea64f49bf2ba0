"""GUI-interaction-aware text-retrieval bug localization.

The library ranks an app's source files against a bug report with tf-idf
or rVSM scoring (or precomputed embeddings), then augments the ranking with
information from a recorded GUI reproduction scenario: filtering to
GUI-related files, boosting them to the top, and reformulating the query
with GUI terms.
"""

from .augment import (
    Configuration,
    ConfigurationError,
    Reform,
    Rerank,
    apply_config,
    boost_ranking,
    enumerate_configs,
    filter_ranking,
    reformulate_query,
)
from .corpus import Corpus, CorpusError, SourceDocument, load_corpus
from .embeddings import (
    EmbeddingStore,
    EmbeddingStoreError,
    load_embedding_store,
    rank_embeddings,
    save_embedding_store,
)
from .evaluation import (
    EvalError,
    MovementReport,
    classify_movement,
    first_rank,
    hits_at_k,
    rank_movement,
    relative_improvement,
    top10_overlap,
    wilcoxon_signed_rank,
)
from .manifest import BugEntry, ManifestError, load_manifest
from .mapping import gui_related_files, map_component_ids, map_screen_terms
from .retrieval import (
    Index,
    RankedList,
    RetrievalError,
    build_index,
    rank_rvsm,
    rank_tfidf,
)
from .scenario import (
    Action,
    ComponentMeta,
    ExercisedAction,
    GuiInfoType,
    GuiTermSet,
    ReproductionScenario,
    ScenarioError,
    ScreenObservation,
    extract_terms,
    parse_scenario,
    select_screens,
)
from .tokens import JAVA_KEYWORDS, preprocess_text, segment_tokens

__version__ = "0.1.0"

__all__ = [
    "Action",
    "BugEntry",
    "ComponentMeta",
    "Configuration",
    "ConfigurationError",
    "Corpus",
    "CorpusError",
    "EmbeddingStore",
    "EmbeddingStoreError",
    "EvalError",
    "ExercisedAction",
    "GuiInfoType",
    "GuiTermSet",
    "Index",
    "JAVA_KEYWORDS",
    "ManifestError",
    "MovementReport",
    "RankedList",
    "Reform",
    "ReproductionScenario",
    "Rerank",
    "RetrievalError",
    "ScenarioError",
    "ScreenObservation",
    "SourceDocument",
    "apply_config",
    "boost_ranking",
    "build_index",
    "classify_movement",
    "enumerate_configs",
    "extract_terms",
    "filter_ranking",
    "first_rank",
    "gui_related_files",
    "hits_at_k",
    "load_corpus",
    "load_embedding_store",
    "load_manifest",
    "map_component_ids",
    "map_screen_terms",
    "parse_scenario",
    "preprocess_text",
    "rank_embeddings",
    "rank_movement",
    "rank_rvsm",
    "rank_tfidf",
    "reformulate_query",
    "relative_improvement",
    "save_embedding_store",
    "segment_tokens",
    "select_screens",
    "top10_overlap",
    "wilcoxon_signed_rank",
]
