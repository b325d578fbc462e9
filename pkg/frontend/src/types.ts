/** Wire types of the annotation service JSON API. */

export type Label = "paraphrase" | "non_paraphrase";

export interface Task {
  task_id: string;
  pair_id: string;
  annotator_id: string;
  sentence_1: string;
  sentence_2: string;
  assigned_at: string;
}

export interface SubmittedRecord {
  pair_id: string;
  annotator_id: string;
  sts_degree: number;
  near_paraphrase: boolean;
  submitted_at: string;
  revision: number;
}

export interface Judgment {
  annotator_id: string;
  sts_degree: number;
  label: Label;
  near_paraphrase: boolean;
}

export interface Disagreement {
  pair_id: string;
  sentence_1: string;
  sentence_2: string;
  judgments: Judgment[];
}

export interface Adjudication {
  pair_id: string;
  final_label: Label;
  near_paraphrase: boolean;
  method: string;
  adjudicator_id: string | null;
}

export interface KappaRow {
  annotator_a: string;
  annotator_b: string;
  n_items: number;
  observed_agreement: number;
  expected_agreement: number;
  kappa: number;
}

export interface GuidelineDegree {
  degree: number;
  name: string;
  description: string;
}

export interface Guideline {
  title: string;
  decision_rule: string;
  degrees: GuidelineDegree[];
  near_paraphrase_categories: {
    id: string;
    name: string;
    description: string;
    example: { sentence_1: string; sentence_2: string };
  }[];
  notes: string;
  markdown: string;
}

export interface LabelSubmission {
  pair_id: string;
  annotator_id: string;
  sts_degree: number;
  near_paraphrase: boolean;
}

export interface AdjudicationSubmission {
  pair_id: string;
  adjudicator_id: string;
  final_label: Label;
  near_paraphrase: boolean;
}
