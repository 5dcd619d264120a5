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

import logging as python_logging
import os
from unittest import mock

from absl import logging
from absl.testing import absltest
from absl.testing import parameterized

from apxconv import utils


class MaxLatticeTest(parameterized.TestCase):

  def test_default_without_override(self):
    with mock.patch.dict(os.environ):
      os.environ.pop(utils.MAX_LATTICE_ENV, None)
      self.assertEqual(utils.max_lattice(), utils.DEFAULT_MAX_LATTICE)
      self.assertEqual(utils.max_lattice(default=7), 7)

  def test_override(self):
    with mock.patch.dict(os.environ, {utils.MAX_LATTICE_ENV: '50'}):
      self.assertEqual(utils.max_lattice(), 50)

  @parameterized.parameters(('abc', 'not an integer'), ('0', 'positive'),
                            ('-3', 'positive'))
  def test_bad_override(self, value, message):
    with mock.patch.dict(os.environ, {utils.MAX_LATTICE_ENV: value}):
      with self.assertRaisesRegex(utils.BoundsError, message):
        utils.max_lattice()


class CheckBoundsTest(parameterized.TestCase):

  def test_within_bounds(self):
    utils.check_bounds(points=6, chain=8, lattice=100, max_lattice_size=100)

  @parameterized.named_parameters(
      ('too_many_points', dict(points=7)),
      ('no_points', dict(points=0)),
      ('long_chain', dict(chain=9)),
      ('empty_chain', dict(chain=0)),
      ('large_frame', dict(lattice=101, max_lattice_size=100)),
  )
  def test_rejects(self, kwargs):
    with self.assertRaises(utils.BoundsError):
      utils.check_bounds(**kwargs)

  def test_frame_cap_follows_environment(self):
    with mock.patch.dict(os.environ, {utils.MAX_LATTICE_ENV: '20'}):
      utils.check_bounds(lattice=20)
      with self.assertRaisesRegex(utils.BoundsError, '27 elements'):
        utils.check_bounds(lattice=27)

  def test_bounds_error_is_a_value_error(self):
    self.assertTrue(issubclass(utils.BoundsError, ValueError))


class FileLoggerTest(absltest.TestCase):

  def _log_to(self, workdir, message):
    fh = utils.add_file_logger(workdir)
    try:
      logging.warning(message)
      fh.flush()
    finally:
      python_logging.getLogger('').removeHandler(fh)
      fh.close()

  def test_writes_and_appends(self):
    workdir = os.path.join(self.create_tempdir().full_path, 'logs')
    self._log_to(workdir, 'first run')
    self._log_to(workdir, 'second run')
    with open(os.path.join(workdir, 'apxconv.log'), encoding='utf-8') as f:
      contents = f.read()
    self.assertIn('first run', contents)
    self.assertIn('second run', contents)


if __name__ == '__main__':
  absltest.main()
