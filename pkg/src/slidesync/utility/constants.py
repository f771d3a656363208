# Tunable constants shared across slidesync.

# Text matching
FUZZY_TOKEN_GATE = 0.8            # per-token similarity for a fuzzy hit
LEXICON_SIMILARITY_GATE = 0.75    # lexicon substitution in post-correction
MIN_LEXICON_TOKEN_LENGTH = 3

# Timing
WORD_TIMING_TOLERANCE = 0.25      # seconds, ASR word timestamps jitter

# Provider limits
MAX_EMBED_TEXT_BYTES = 8192
MAX_PROMPT_BYTES = 32 * 1024
DEFAULT_MAX_IN_FLIGHT = 4
DEFAULT_PROVIDER_TIMEOUT = 30.0   # seconds
DEFAULT_PROVIDER_RETRIES = 2
DEFAULT_EMBEDDING_MODEL = "all-MiniLM-L6-v2"
DEFAULT_HASHING_DIM = 256
API_TOKEN_ENV = "SLIDESYNC_API_TOKEN"

# Serialization
SCORE_DECIMALS = 6

# Rendering
DEFAULT_STROKE_COLOR = "#e53935"
DEFAULT_FILL_COLOR = "#ffeb3b"
DEFAULT_FILL_OPACITY = 0.35
DEFAULT_MAGNIFY_SCALE = 1.6
HIDE_LAYER_OPACITY = 0.85
HIDE_LAYER_COLOR = "#000000"
STROKE_WIDTH_RATIO = 0.004        # of image width
MAGNIFY_BORDER_RATIO = 0.002      # of image width

# Threshold presets: name -> (textual, visual)
THRESHOLD_PRESETS = {
    "T-1": (0.8, 0.6),
    "T-2": (0.7, 0.6),
    "T-3": (0.6, 0.6),
    "best-fuzzy": (0.45, 0.6),
    "best-sbert": (0.55, 0.6),
    "best-specter": (0.85, 0.6),
    "best-scibert": (0.75, 0.6),
}

# Prompt templates
YES_NO_PROMPT = (
    "Transcript: \"{line}\"\n"
    "Slide region: \"{region_text}\"\n"
    "Is the slide region relevant to the transcript? Answer Yes or No."
)
SELECT_PROMPT = (
    "Transcript: \"{line}\"\n"
    "Slide regions:\n"
    "{regions}\n"
    "List the ids of all relevant regions, comma-separated, or \"none\"."
)
CORRECTION_PROMPT = (
    "Slide text:\n"
    "{slide_text}\n"
    "Transcript line: \"{line}\"\n"
    "Rewrite the transcript line, correcting only misrecognized words using the slide text. "
    "Reply with the corrected line only."
)

# Exit codes
EXIT_OK = 0
EXIT_FATAL = 1
EXIT_DIAGNOSTICS = 2
EXIT_USAGE = 64
