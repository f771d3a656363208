import random
import tempfile
import unittest
from collections import Counter
from pathlib import Path

from helpers import make_region, make_slide, make_transcript, write_script
from slidesync.classes import RegionKind, TimedWord, Transcript, TranscriptLine
from slidesync.correction import (build_slide_lexicon, correct_lexical, correct_llm, correct_token,
                                  correct_transcript_lexical, nearest_lexicon_token, render_correction_prompt)
from slidesync.providers import LlmProviderKind, LlmProviderSpec, create_llm_provider


class TestLexicon(unittest.TestCase):
    def test_counts_textual_tokens_only(self):
        slide = make_slide([("R1", "Deep deep Learning"), ("R2", "a to of"),
                            make_region("F1", "caption words", kind=RegionKind.VISUAL)])
        self.assertEqual(build_slide_lexicon(slide), Counter({"deep": 2, "learning": 1}))

    def test_nearest_token(self):
        lexicon = Counter({"deep": 2, "learning": 1})
        self.assertEqual(nearest_lexicon_token("lerning", lexicon), ("learning", 0.875))
        self.assertIsNone(nearest_lexicon_token("banana", lexicon))

    def test_tie_keeps_token(self):
        self.assertIsNone(nearest_lexicon_token("data", Counter({"date": 1, "dara": 1})))
        self.assertEqual(correct_token("data", Counter({"date": 1, "dara": 1})), ("data", None))


class TestCorrectLexical(unittest.TestCase):
    def setUp(self):
        self.lexicon = Counter({"deep": 2, "learning": 1, "convolutional": 1})

    def test_replaces_near_miss(self):
        line = TranscriptLine("L1", "deep lerning is fun", 1.0, 3.0)
        corrected, log = correct_lexical(line, self.lexicon)
        self.assertEqual(corrected.text, "deep learning is fun")
        self.assertEqual((corrected.t_start, corrected.t_end), (1.0, 3.0))
        self.assertEqual([(s.source, s.target) for s in log.subs], [("lerning", "learning")])
        self.assertEqual(log.to_dict(), {"line_id": "L1", "subs": [{"from": "lerning", "to": "learning",
                                                                    "similarity": 0.875}]})

    def test_keeps_punctuation_and_case(self):
        line = TranscriptLine("L1", "Convolushional, LERNING!", 0.0, 1.0)
        corrected, _ = correct_lexical(line, self.lexicon)
        self.assertEqual(corrected.text, "Convolutional, LEARNING!")

    def test_word_timings_follow_text(self):
        words = (TimedWord("deep", 0.0, 0.5), TimedWord("lerning", 0.5, 1.0))
        corrected, _ = correct_lexical(TranscriptLine("L1", "deep lerning", 0.0, 1.0, words), self.lexicon)
        self.assertEqual(corrected.words, (TimedWord("deep", 0.0, 0.5), TimedWord("learning", 0.5, 1.0)))

    def test_unchanged_line_is_same_object(self):
        line = TranscriptLine("L1", "nothing to fix here", 0.0, 1.0)
        corrected, log = correct_lexical(line, self.lexicon)
        self.assertIs(corrected, line)
        self.assertEqual(log.subs, ())

    def test_idempotent(self):
        rng = random.Random(13)
        vocabulary = ["deep", "dep", "learning", "lerning", "Lerning,", "convolushional", "data", "the", "x",
                      "CONVOLUTIONAL.", "(deeep)", "learnings", "net"]
        slide = make_slide([("R1", "deep deep learning"), ("R2", "Convolutional networks")])
        for _ in range(100):
            transcript = make_transcript([" ".join(rng.choice(vocabulary) for _ in range(rng.randint(0, 8)))
                                          for _ in range(rng.randint(1, 4))])
            once, _ = correct_transcript_lexical(transcript, slide)
            twice, logs = correct_transcript_lexical(once, slide)
            self.assertEqual(twice, once)
            self.assertTrue(all(log.subs == () for log in logs))
            self.assertEqual(once.line_ids, transcript.line_ids)
            self.assertEqual([(l.t_start, l.t_end) for l in once.lines],
                             [(l.t_start, l.t_end) for l in transcript.lines])


class TestCorrectLlm(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.slide = make_slide([("R1", "Convolutional Neural Networks"), ("R2", "Pooling")])
        words = (TimedWord("convolushional", 0.0, 1.0), TimedWord("nets", 1.0, 2.0))
        self.transcript = Transcript("s1", (
            TranscriptLine("L1", "convolushional nets", 0.0, 2.0, words),
            TranscriptLine("L2", "then pooling", 2.0, 4.0),
            TranscriptLine("L3", "all good", 4.0, 6.0),
        ))

    def tearDown(self):
        self.tmp.cleanup()

    def provider(self, replies):
        script = write_script(Path(self.tmp.name) / "replies.json", replies)
        return create_llm_provider(LlmProviderSpec(LlmProviderKind.SCRIPTED, script_path=str(script)))

    def test_prompt_contains_slide_text(self):
        prompt = render_correction_prompt("a  b", self.slide)
        self.assertIn("Convolutional Neural Networks\nPooling", prompt)
        self.assertIn('Transcript line: "a b"', prompt)

    def test_corrects_and_reports_failures(self):
        replies = {
            render_correction_prompt("convolushional nets", self.slide): '"convolutional nets"',
            render_correction_prompt("all good", self.slide): "all good",
        }
        corrected, diagnostics = correct_llm(self.transcript, self.slide, self.provider(replies), max_in_flight=2)
        self.assertEqual([l.text for l in corrected.lines], ["convolutional nets", "then pooling", "all good"])
        self.assertEqual(corrected.lines[0].words[0], TimedWord("convolutional", 0.0, 1.0))
        self.assertIs(corrected.lines[2], self.transcript.lines[2])
        self.assertEqual([(d.line_id, d.kind) for d in diagnostics], [("L2", "correction_error")])
        self.assertEqual([(l.t_start, l.t_end) for l in corrected.lines], [(0.0, 2.0), (2.0, 4.0), (4.0, 6.0)])

    def test_changed_token_count_drops_words(self):
        replies = {render_correction_prompt(line.text, self.slide): "convolutional neural networks"
                   for line in self.transcript.lines}
        corrected, diagnostics = correct_llm(self.transcript, self.slide, self.provider(replies))
        self.assertEqual(diagnostics, [])
        self.assertIsNone(corrected.lines[0].words)

    def test_empty_reply_is_a_failure(self):
        replies = {render_correction_prompt(line.text, self.slide): "  " for line in self.transcript.lines}
        corrected, diagnostics = correct_llm(self.transcript, self.slide, self.provider(replies))
        self.assertEqual(corrected, self.transcript)
        self.assertEqual(len(diagnostics), 3)


if __name__ == '__main__':
    unittest.main()
