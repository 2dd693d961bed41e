/** Wire types of the local engine API. */

export interface CategoryInfo {
  name: string;
  label: string;
  color: string;
  order: number;
}

export interface DatasetSummary {
  dataset_id: string;
  service: string;
  ingested_at: string;
  file_count: number;
  element_count: number;
  total_size_bytes: number;
  time_extent: [string, string] | null;
}

export interface ParseWarning {
  path: string;
  message: string;
}

export interface IngestResponse {
  dataset: DatasetSummary;
  report: {
    files_parsed: number;
    files_skipped: number;
    elements_emitted: number;
    warnings: ParseWarning[];
  };
}

export interface StatsResponse {
  element_count: number;
  category_counts: Record<string, number>;
  service_counts: Record<string, number>;
  total_size_bytes: number;
  time_extent: [string, string] | null;
}

export interface FileInfo {
  dataset_id: string;
  name: string;
  folder: string;
  size_bytes: number;
  file_category: string;
  data_category: string | null;
  element_count: number;
}

export interface TreemapTile {
  file: FileInfo;
  x: number;
  y: number;
  w: number;
  h: number;
  color: string;
}

export interface TreemapResponse {
  width: number;
  height: number;
  scale: string;
  tiles: TreemapTile[];
}

export interface TimelinePoint {
  id: string;
  x: number; // days since 1970-01-01 (UTC date)
  y: number; // seconds since midnight UTC
  category: string;
}

export interface TimelinePanel {
  dataset_id: string | null;
  label: string | null;
  points: TimelinePoint[];
}

export interface TimelineResponse {
  panels: TimelinePanel[];
}

export interface ElementRow {
  id: string;
  time: string | null;
  text: string;
  category: string;
  subcategory: string;
  dataset_id: string;
  source_file: string;
}

export interface ElementsPage {
  total: number;
  offset: number;
  rows: ElementRow[];
}

export interface RatingResponse {
  rating: { element_id: string; value: number; rated_at: string };
  average: number | null;
  rated_count: number;
  persisted: boolean;
}

export interface AverageResponse {
  average: number | null;
  rated_count: number;
}

/** Filter state shared by every view (mirrors the engine's Selection). */
export interface Selection {
  datasets: string[];
  categories: string[];
  query: string | null;
  timeRange: [string, string] | null;
}

export const emptySelection = (): Selection => ({
  datasets: [],
  categories: [],
  query: null,
  timeRange: null,
});
