/** Shared CSV fixtures; shaped exactly like the epiwalk CLI's writers. */

import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export const TRACE_TEXT = `epoch,C_t,cut_level,survivors,theta_hat,give_ups,queries_cum,subopt_if_known,wall_ms
1,0.5,0.3061654076116044,32,nan,3,348550,0.002654489459465778,47.2
2,0.3061654076116044,0.208907308470055,28,0.6504771836338387,9,1043322,0.017569544616551507,64.9
3,0.208907308470055,0.12528057224044725,33,1.6857776990081463,16,2174847,0.009722955491881803,82.3
4,0.12528057224044725,0.0640823333741906,31,0.8685360415035828,11,3094308,0.0034877505801360073,78.0
5,0.0640823333741906,0.03341866243825438,30,0.9052894461744347,13,5345463,0.016651850260096208,90.1
`;

/** A run on a function with no known minimum writes subopt as nan. */
export const TRACE_NO_MIN_TEXT = `epoch,C_t,cut_level,survivors,theta_hat,give_ups,queries_cum,subopt_if_known,wall_ms
1,0.5,0.31,40,nan,0,1000,nan,5.0
2,0.31,0.20,38,0.95,0,2500,nan,5.1
`;

/** Slope of ln(queries) on ln(1/eps) is 2.155080586026638 (checked
 *  against an independent polynomial fit); annotation rounds to 2.16. */
export const SWEEP_TEXT = `value,total_queries,final_subopt,epochs
0.2,269462,0.018675032202547508,2
0.1,897747,0.0002261026257795899,4
0.05,5345463,0.016651850260096208,5
`;
export const SWEEP_SLOPE = 2.155080586026638;

/** Quadrupling queries per halved eps gives an exact slope of 2. */
export const SWEEP_EXACT2_TEXT = `value,total_queries,final_subopt,epochs
0.2,1000,0.01,2
0.1,4000,0.01,3
0.05,16000,0.01,4
`;

/** A failed swept run leaves everything but the value empty. */
export const SWEEP_WITH_FAILURE_TEXT = `value,total_queries,final_subopt,epochs
0.2,269462,0.018675032202547508,2
0.5,,,
0.1,897747,0.0002261026257795899,4
0.05,5345463,0.016651850260096208,5
`;

export const RESULT_JSON_TEXT = JSON.stringify(
  { config_echo: { n_t: 64, seed: 0 }, converged: true },
  null,
  2,
);

/** Writes the given files into a fresh temp directory and returns it. */
export function tmpWith(files: Record<string, string>): string {
  const dir = mkdtempSync(join(tmpdir(), "plots-test-"));
  for (const [name, text] of Object.entries(files)) {
    writeFileSync(join(dir, name), text);
  }
  return dir;
}
