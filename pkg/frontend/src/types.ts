/** Payload shapes of the splboard curation API, mirrored verbatim. */

export interface FeatureRow {
  feature: string;
  candidates: number;
  accepted: number;
}

export type CandidateStatus = 'accepted' | 'rejected' | 'none';

export interface CandidateRow {
  term: string;
  relevance: number | null;
  tfidf_norm: number | null;
  centrality_norm: number | null;
  status: CandidateStatus;
  expert_added: boolean;
}

export interface CandidatesPayload {
  feature: string;
  candidates: CandidateRow[];
}

export interface MapConcept {
  id: string;
  label: string;
  features: string[];
}

export interface MapRelation {
  a: string;
  label: string;
  b: string;
  suggested: boolean;
}

export interface ConceptMapPayload {
  concepts: MapConcept[];
  relations: MapRelation[];
}

export interface SuggestedRelation {
  a: string;
  label: string;
  b: string;
}

export interface JourneyStep {
  feature: string;
  anchor: string;
  weight: number;
  warnings: string[];
}

export interface JourneyPayload {
  source: string;
  steps: JourneyStep[];
  unreachable: string[];
}

export type LedgerAction =
  | { op: 'accept' | 'reject'; feature: string; term: string }
  | { op: 'rename'; term: string; label: string }
  | { op: 'relate'; a: string; label: string; b: string };
