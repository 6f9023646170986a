"""Pushdown compressors versus LZ78.

Executable deterministic pushdown transducers (parse, validate, run,
trace), an incremental LZ78 coder, a zoo of hand-built compressors, the
benchmark sequences they are measured on, a repetition-decomposition
finder, and a harness that turns all of it into compression-ratio curves.
"""

from .kernels import IMPL, compile_machine, make_lz_stream
from .lz import (LzCounter, LzParse, lz_bits, lz_decode, lz_encode,
                 lz_parse, lz_phrase_count, lz_ratio)
from .machine import (Column, Diagram, IlReport, PdcFormatError, PdcRunError,
                      PdcSpec, RunResult, ValidationReport, compress,
                      format_pdc, il_check, load_pdc, parse_pdc, ratio_at,
                      run, run_endmarked, run_traced, validate_spec)
from .pumping import (EndmarkFit, FamilyConstants, PumpDecomposition,
                      default_dmin, family_constants, find_pumpable,
                      fit_and_verify_endmarked, preset_families,
                      read_decompositions, verify_pump_plain,
                      write_decompositions)
from .sequences import (CheckpointedStream, HardBlock, RepetitionRecipe,
                        ZonePlan, build_S, choose_repetition_counts,
                        enumerate_T, flag_len, pd_hard_blocks, random_word,
                        restricted_T, splitmix64, zone_split)
from .harness import (RatioRow, TailEstimate, floor_scan, lz_series,
                      pdc_series, run_preset, tail_estimates, write_csv)
from .zoo import builtin_machines, get_builtin

__version__ = "0.1.0"

__all__ = [
    "IMPL", "compile_machine", "make_lz_stream",
    "LzCounter", "LzParse", "lz_bits", "lz_decode", "lz_encode", "lz_parse",
    "lz_phrase_count", "lz_ratio",
    "Column", "Diagram", "IlReport", "PdcFormatError", "PdcRunError",
    "PdcSpec", "RunResult", "ValidationReport", "compress", "format_pdc",
    "il_check", "load_pdc", "parse_pdc", "ratio_at", "run", "run_endmarked",
    "run_traced", "validate_spec",
    "EndmarkFit", "FamilyConstants", "PumpDecomposition", "default_dmin",
    "family_constants", "find_pumpable", "fit_and_verify_endmarked",
    "preset_families", "read_decompositions", "verify_pump_plain",
    "write_decompositions",
    "CheckpointedStream", "HardBlock", "RepetitionRecipe", "ZonePlan",
    "build_S", "choose_repetition_counts", "enumerate_T", "flag_len",
    "pd_hard_blocks", "random_word", "restricted_T", "splitmix64",
    "zone_split",
    "RatioRow", "TailEstimate", "floor_scan", "lz_series", "pdc_series",
    "run_preset", "tail_estimates", "write_csv",
    "builtin_machines", "get_builtin",
    "__version__",
]
