import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Tuple

import numpy as np

from .config import MatcherConfig, MatcherMethod
from .fuzzy import fuzzy_score_matrix
from .llm import DecisionError, llm_select, llm_yes_no_decide
from .score_matrix import ScoreMatrix
from .semantic import embedding_score_matrix
from ..classes.alignment import AlignmentResult, Diagnostic, RegionMatch
from ..classes.slide import SlideDocument
from ..classes.transcript import Transcript, TranscriptLine
from ..providers.llm import UnscriptedPromptError
from ..providers.transport import ProviderError
from ..utility.text import normalize_text

logger = logging.getLogger(__name__)


class Matcher:
    """
    Scores every (line, region) pair of a slide and turns the scores into predictions.

    Subclasses implement score(); score-based matchers are thresholded by the policy,
    categorical ones predict exactly the pairs scored 1.
    """
    categorical = False

    def __init__(self, config: MatcherConfig):
        self.config = config

    @property
    def tag(self) -> str:
        return self.config.method.value

    def score(self, slide: SlideDocument, transcript: Transcript) -> Tuple[ScoreMatrix, Dict[str, Diagnostic], List[Diagnostic]]:
        """
        :return: the score matrix, one diagnostic per aborted line, and diagnostics that
                 did not abort their line
        """
        raise NotImplementedError

    def align(self, slide: SlideDocument, transcript: Transcript) -> AlignmentResult:
        matrix, aborted, notes = self.score(slide, transcript)
        if self.categorical:
            predictions = matrix.decisions()
        else:
            predictions = matrix.apply_policy(self.config.policy, [region.is_textual for region in slide.regions])
        lines = {}
        for line in transcript.lines:
            if line.line_id in aborted:
                continue
            if not normalize_text(line.text, self.config.normalization):
                lines[line.line_id] = ()
            elif self.categorical:
                lines[line.line_id] = tuple(RegionMatch(rid, 1.0, self.tag) for rid, _ in predictions[line.line_id])
            else:
                lines[line.line_id] = tuple(RegionMatch(rid, score, self.tag) for rid, score in predictions[line.line_id])
        diagnostics = tuple(notes) + tuple(aborted[line_id] for line_id in transcript.line_ids if line_id in aborted)
        predicted = sum(len(matches) for matches in lines.values())
        logger.info(f"Aligned slide {slide.slide_id} with {self.tag}: {predicted} predictions over "
                    f"{len(lines)} lines, {len(diagnostics)} diagnostics")
        return AlignmentResult(slide_id=slide.slide_id, matcher=self.tag, lines=lines, diagnostics=diagnostics)


class FuzzyMatcher(Matcher):
    def score(self, slide, transcript):
        return fuzzy_score_matrix(slide, transcript, self.config.normalization), {}, []


class EmbeddingMatcher(Matcher):
    def __init__(self, config: MatcherConfig):
        super().__init__(config)
        self.provider = config.resolve_embedding_provider()

    @property
    def tag(self) -> str:
        return f"embedding:{self.provider.model_name}"

    def score(self, slide, transcript):
        matrix, failed = embedding_score_matrix(slide, transcript, self.provider, self.config.normalization)
        return matrix, failed, []


class LlmMatcher(Matcher):
    """Shared plumbing for the LLM matchers: one task per line, bounded in-flight requests."""
    categorical = True

    def __init__(self, config: MatcherConfig):
        super().__init__(config)
        self.provider = config.resolve_llm_provider()

    def decide_line(self, slide: SlideDocument, line: TranscriptLine) -> Tuple[np.ndarray, List[Diagnostic]]:
        raise NotImplementedError

    def _run_line(self, slide: SlideDocument, line: TranscriptLine):
        if not normalize_text(line.text, self.config.normalization) or not slide.regions:
            return np.zeros(len(slide.regions)), [], None
        try:
            row, notes = self.decide_line(slide, line)
            return row, notes, None
        except UnscriptedPromptError:
            raise
        except ProviderError as e:
            logger.warning(f"Provider failed on slide {slide.slide_id} line {line.line_id}: {e}")
            return np.zeros(len(slide.regions)), [], Diagnostic(slide.slide_id, line.line_id, None, "provider_error", str(e))

    def score(self, slide, transcript):
        with ThreadPoolExecutor(max_workers=self.config.max_in_flight) as executor:
            outcomes = list(executor.map(lambda line: self._run_line(slide, line), transcript.lines))
        scores = np.zeros((len(transcript.lines), len(slide.regions)))
        aborted = {}
        notes = []
        for row, (line, (decisions, line_notes, failure)) in enumerate(zip(transcript.lines, outcomes)):
            scores[row] = decisions
            notes.extend(line_notes)
            if failure is not None:
                aborted[line.line_id] = failure
        return ScoreMatrix(tuple(transcript.line_ids), tuple(slide.region_ids), scores), aborted, notes


class LlmYesNoMatcher(LlmMatcher):
    def decide_line(self, slide, line):
        # regions of one line are asked in turn; lines run concurrently
        row = np.zeros(len(slide.regions))
        notes = []
        for col, region in enumerate(slide.regions):
            try:
                row[col] = 1.0 if llm_yes_no_decide(line.text, region, self.provider) else 0.0
            except DecisionError as e:
                notes.append(Diagnostic(slide.slide_id, line.line_id, region.id, "decision_error", str(e)))
        return row, notes


class LlmSelectMatcher(LlmMatcher):
    def decide_line(self, slide, line):
        selection = llm_select(line.text, slide.regions, self.provider)
        row = np.array([1.0 if region.id in selection.region_ids else 0.0 for region in slide.regions])
        notes = [Diagnostic(slide.slide_id, line.line_id, region_id, "dropped_id",
                            f"region id {region_id} is not on the slide")
                 for region_id in selection.dropped_ids]
        if selection.unparseable:
            notes.append(Diagnostic(slide.slide_id, line.line_id, None, "unparseable_reply",
                                    "reply is not a list of region ids"))
        return row, notes


MATCHERS = {
    MatcherMethod.FUZZY: FuzzyMatcher,
    MatcherMethod.EMBEDDING: EmbeddingMatcher,
    MatcherMethod.LLM_YES_NO: LlmYesNoMatcher,
    MatcherMethod.LLM_SELECT: LlmSelectMatcher,
}


def create_matcher(config: MatcherConfig) -> Matcher:
    return MATCHERS[config.method](config)


def align(slide: SlideDocument, transcript: Transcript, config: MatcherConfig) -> AlignmentResult:
    """Map each transcript line to the slide regions it talks about."""
    return create_matcher(config).align(slide, transcript)
