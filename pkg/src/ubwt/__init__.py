"""Succinct BWT-based string indexing and analysis toolkit."""

from .textcore import Text, read_fasta, read_raw
from .succinct import Bitvector, GammaStream, Predecessor, PrefixSum, Rmq
from .seqindex import PermutationInverter, SequenceIndex
from .mmphf import DEFAULT_SEED, Mmphf, Mphf, QuotientedMmphf, build_mmphf, mmphf_eval
from .rangedistinct import (QueryContext, RangeDistinctIndex, range_distinct,
                            range_distinct_mmphf)
from .bwt import (BwtString, bwt_from_suffix_array, bwt_linear, bwt_naive,
                  merge_bwts, reverse_bwt)
from .enumeration import (EnumStats, ExtensionScratch, GenRepr, Repr,
                          enumerate_generalized, enumerate_right_maximal,
                          extend_left, root_repr)
from .topology import (BpTopology, WeinerSupport, bp_navigate, build_topology,
                       build_weiner_support, count_smaller, suffix_link,
                       weiner_link)
from .indexes import (ChildSupport, CstHandle, LayeredCsa,
                      SuccinctSuffixArray, build_cst, csa_lookup,
                      cst_blind_child, cst_child, cst_string_ancestor,
                      cst_string_depth, default_sample_rate, ssa_count,
                      ssa_locate, ssa_substring)
from .bidirectional import (UNSUPPORTED, BidirIndex, MsArrays, bidir_contract,
                            bidir_enumerate, bidir_extend, bidir_is_maximal,
                            build_ds, build_ms, build_plcp)
from .analysis import (kmer_complexity, kmer_kernel, matching_statistics_det,
                       maximal_exact_matches, maximal_repeats,
                       maximal_unique_matches, minimal_absent_words,
                       pair_product, substring_complexity, substring_kernel)
from .container import (IndexContainer, decode_state, encode_state,
                        read_sections, resolve_seed, write_sections)

__version__ = "0.1.0"
