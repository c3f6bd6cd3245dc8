#ifndef TDFF_TDFF_HPP
#define TDFF_TDFF_HPP

// Umbrella header: the full recognition stage, from embedding ingestion
// through two-stage fusion, template-specific SVMs, one-shot-similarity
// scoring and protocol evaluation.

#include "tdff/config.hpp"
#include "tdff/dataset.hpp"
#include "tdff/embedding.hpp"
#include "tdff/errors.hpp"
#include "tdff/eval.hpp"
#include "tdff/fusion.hpp"
#include "tdff/io/feature_file.hpp"
#include "tdff/io/metadata.hpp"
#include "tdff/io/model_file.hpp"
#include "tdff/io/report.hpp"
#include "tdff/io/scores_file.hpp"
#include "tdff/io/template_file.hpp"
#include "tdff/media.hpp"
#include "tdff/pipeline.hpp"
#include "tdff/scoring.hpp"
#include "tdff/svm.hpp"
#include "tdff/synthetic.hpp"

#endif  // TDFF_TDFF_HPP
