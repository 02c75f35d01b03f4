"""Fuzzy color aesthetics: palette mining, harmony, and preference prediction."""

from .colorspace import (ChannelMembership, FuzzyColor, HsiPixel, Partition,
                         default_partition, hsi_to_rgb, load_partition, membership,
                         rgb_to_hsi, save_partition)
from .descriptor import (ColorDescriptor, ExtractionConfig, descriptor_from_color_ids,
                         extract_descriptor, load_image)
from .errors import (ColorHarmonyError, DataValidationError, InvalidStateError,
                     NotFoundError)
from .evaluation import (PreferencePair, QueryResult, average_difference,
                         precision_recall)
from .miner import (Group, HarmoniousPalette, MinerConfig, MiningStats, assign,
                    average_palette, load_kb, mine, save_kb)
from .preference import (ApparelItem, Look, PreferenceScore, Role, UserProfile,
                         harmony, predict_preference, rank_catalog, role_weight)
from .similarity import (ColorDistanceTable, color_distance, descriptor_difference,
                         group_mean_difference, palette_similarity)
from .store import CatalogItem, Store

__version__ = "0.1.0"

__all__ = [
    "ApparelItem", "CatalogItem", "ChannelMembership", "ColorDescriptor",
    "ColorDistanceTable", "ColorHarmonyError", "DataValidationError",
    "ExtractionConfig", "FuzzyColor", "Group", "HarmoniousPalette", "HsiPixel",
    "InvalidStateError", "Look", "MinerConfig", "MiningStats", "NotFoundError",
    "Partition", "PreferencePair", "PreferenceScore", "QueryResult", "Role",
    "Store", "UserProfile", "assign", "average_difference", "average_palette",
    "color_distance", "default_partition", "descriptor_difference",
    "descriptor_from_color_ids", "extract_descriptor", "group_mean_difference",
    "harmony", "hsi_to_rgb", "load_image", "load_kb", "load_partition",
    "membership", "mine", "palette_similarity", "precision_recall",
    "predict_preference", "rank_catalog", "rgb_to_hsi", "role_weight", "save_kb",
    "save_partition",
]
