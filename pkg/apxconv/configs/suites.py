# Copyright 2024 The apxconv Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

r"""Named check suites.

Example running the adherence-continuity suite with another seed:

python -m apxconv.main check --theorems \
    --config=$(pwd)/apxconv/configs/suites.py:adhcont \
    --config.seed=7
"""

from apxconv.configs import common


def get_config(suite='desk'):
  """Returns the run configuration of the preset `suite`."""
  return common.with_suite(common.get_config(), suite)
