/**
 * Document shapes served by the talkflow API (docs/schemas/ in the backend
 * repo is the authoritative contract; these mirror it field for field).
 */

export interface SpeakerMetrics {
  speaker: string;
  speaking_ms: number;
  share: number;
  floor_turn_count: number;
  backchannel_count: number;
  mean_floor_turn_ms: number;
  longest_floor_turn_ms: number;
  word_count: number;
  words_per_minute: number;
  filled_pause_count: number;
  long_pauses_after: number;
  language_ms: { fr: number; en: number; unknown: number };
}

export interface FlowMatrix {
  speakers: string[];
  counts: number[][];
}

export interface AnalysisConfigDoc {
  merge_gap_ms: number;
  long_pause_ms: number;
  backchannel_max_ms: number;
  backchannel_max_tokens: number;
  backchannel_lexicon: string[];
  filled_pause_lexicon: string[];
}

export interface SessionMetrics {
  per_speaker: Record<string, SpeakerMetrics>;
  flow: FlowMatrix;
  total_speaking_ms: number;
  session_duration_ms: number;
  long_pause_count: number;
  config_used: AnalysisConfigDoc;
}

export type SegmentKind = 'floor' | 'backchannel';

export interface TimelineSegment {
  start_ms: number;
  end_ms: number;
  kind: SegmentKind;
}

export interface TimelineTrack {
  speaker: string;
  speaker_index: number;
  segments: TimelineSegment[];
}

export interface TranscriptCue {
  index: number;
  start_ms: number;
  end_ms: number;
  speaker: string;
  text: string;
}

export interface TranscriptDoc {
  source_name: string;
  duration_ms: number;
  speakers: string[];
  cues: TranscriptCue[];
}

export interface SeekResult {
  offset_ms: number;
  active_cue: number | null;
  next_cue: number | null;
}

export interface SessionRecord {
  session_id: string;
  cohort_id: string;
  group_id: string;
  week_number: number;
  recorded_at: string;
  transcript_path: string;
  media_path: string | null;
  speaker_map: Record<string, string | null>;
  metrics: SessionMetrics;
  created_at: string;
}

export interface Participant {
  participant_id: string;
  display_name: string;
  institution: string;
  target_language: 'fr' | 'en';
}

export interface Group {
  group_id: string;
  participant_ids: string[];
}

export interface Cohort {
  cohort_id: string;
  name: string;
  participants: Participant[];
  groups: Group[];
}

export interface ProgressionPoint {
  week_number: number;
  share: number;
  floor_turn_count: number;
  speaking_ms: number;
  filled_pause_count: number;
}

export interface ProgressionReport {
  participant_id: string;
  points: ProgressionPoint[];
  deltas: ProgressionPoint[];
}

export interface ApiErrorBody {
  status: number;
  code: 'bad_transcript' | 'not_found' | 'conflict' | 'validation_failed' | 'internal';
  message: string;
  detail: unknown;
}

/** UI state for the single-page app. */
export interface ViewState {
  selectedSession: string | null;
  playbackPositionMs: number;
  selectedSpeaker: string | null;
  activeView: 'session' | 'progression';
}
