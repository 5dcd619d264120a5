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

import contextlib
import os
import tempfile

from absl.testing import absltest
from absl.testing import parameterized

from apxconv import cap
from apxconv import run
from apxconv import spacefile
from apxconv import test_utils
from apxconv import utils
from apxconv.configs import common
from apxconv.configs import suites


def _config(**overrides):
  config = common.with_suite(common.get_config(), 'smoke')
  config.output_format = 'tsv'
  config.max_lattice = 100
  config.update(overrides)
  return config


@contextlib.contextmanager
def _files(**texts):
  with tempfile.TemporaryDirectory() as tmpdir:
    paths = {}
    for name, text in texts.items():
      paths[name] = os.path.join(tmpdir, name)
      with open(paths[name], 'w', encoding='utf-8') as f:
        f.write(text)
    yield paths


class RunTest(parameterized.TestCase):

  def test_validate(self):
    bad = 'space bad\nmode lukasiewicz 8\npoints p q\nlambda {p} : p=3\n'
    with _files(k3=test_utils.K3_TEXT, bad=bad) as paths:
      out = run.run('validate', _config(),
                    run.Options(paths=(paths['k3'], paths['bad'])))
    self.assertEqual([r.name for r in out.results], ['validate/K3',
                                                     'validate/bad'])
    self.assertEqual([r.passed for r in out.results], [True, False])
    self.assertEqual(out.exit_code, 1)

  def test_info(self):
    with test_utils.written(test_utils.K3_TEXT) as path:
      out = run.run('info', _config(), run.Options(paths=(path,)))
    self.assertIn('approach: False', out.body)
    self.assertIn('r-closed-sets: {} {p} {p,q} {p,q,r}', out.body)
    self.assertEqual(out.exit_code, 0)

  def test_reflect_ap(self):
    with test_utils.written(test_utils.K3_TEXT) as path:
      out = run.run('reflect', _config(),
                    run.Options(paths=(path,), to='ap'))
    self.assertIn('{r}\t4\t2\t0\n', out.body)

  def test_reflect_r(self):
    with test_utils.written(test_utils.K3_TEXT) as path:
      out = run.run('reflect', _config(), run.Options(paths=(path,), to='r'))
    self.assertIn('lim {q} = {p,q}', out.body)

  def test_reflect_needs_a_target(self):
    with test_utils.written(test_utils.K3_TEXT) as path:
      with self.assertRaisesRegex(ValueError, '--to'):
        run.run('reflect', _config(), run.Options(paths=(path,), to='top'))

  def test_closure(self):
    with test_utils.written(test_utils.K3_TEXT) as path:
      out = run.run('closure', _config(),
                    run.Options(paths=(path,), subset='{r}'))
    self.assertIn('adh {r}\t8\t2\t0\n', out.body)
    self.assertIn('cl {r}\t4\t2\t0\n', out.body)
    self.assertEmpty(out.results)

  def test_closure_of_empty_set(self):
    with test_utils.written(test_utils.K3_TEXT) as path:
      out = run.run('closure', _config(),
                    run.Options(paths=(path,), subset='{}'))
    self.assertIn('theta {}\t8\t8\t8\n', out.body)
    self.assertIn('adh {}\t8\t8\t8\n', out.body)
    self.assertIn('cl {}\t8\t8\t8\n', out.body)

  def test_hull(self):
    with _files(k3=test_utils.K3_TEXT, fn='r=0\n') as paths:
      out = run.run('hull', _config(),
                    run.Options(paths=(paths['k3'],), fn=paths['fn']))
    self.assertIn('C(f)\t4\t2\t0\n', out.body)
    self.assertIn('input continuous: False', out.body)
    self.assertTrue(out.all_passed)

  def test_contraction(self):
    reflected = spacefile.format_space(cap.ap_reflection(test_utils.k3()))
    identity = 'p -> p\nq -> q\nr -> r\n'
    with _files(k3=test_utils.K3_TEXT, ap=reflected, map=identity) as paths:
      into = run.run('contraction', _config(), run.Options(
          map=paths['map'], source=paths['k3'], to=paths['ap']))
      back = run.run('contraction', _config(), run.Options(
          map=paths['map'], source=paths['ap'], to=paths['k3']))
    self.assertEqual(into.exit_code, 0)
    self.assertEqual(back.exit_code, 1)
    failed = {r.name: r.witness for r in back.results if not r.passed}
    self.assertEqual(failed['contraction'], {'B': '{r}', 'x': 'p'})

  @parameterized.parameters(('vcap', True), ('vprap', True), ('vap', False),
                            ('closed', True))
  def test_frame(self, check, passed):
    text = spacefile.format_space(test_utils.k3_chain2())
    with test_utils.written(text) as path:
      out = run.run('frame', _config(),
                    run.Options(paths=(path,), frame_check=check))
    self.assertEqual(out.all_passed, passed)

  def test_frame_bound(self):
    with test_utils.written(test_utils.K3_TEXT) as path:
      with self.assertRaises(utils.BoundsError):
        run.run('frame', _config(),
                run.Options(paths=(path,), frame_check='vcap'))

  def test_gen_is_deterministic(self):
    config = _config(seed=11, points=3, chain=4)
    first = run.run('gen', config, run.Options(ap=True)).body
    second = run.run('gen', config, run.Options(ap=True)).body
    self.assertEqual(first, second)
    space = spacefile.parse_space_text(first)
    self.assertEqual(space.name, 'gen-11')
    self.assertTrue(cap.is_approach(space))

  def test_gen_unit_rational(self):
    out = run.run('gen', _config(mode='unit-rational'), run.Options(prap=True))
    self.assertTrue(cap.is_prap(spacefile.parse_space_text(out.body)))

  def test_gen_bounds(self):
    with self.assertRaises(utils.BoundsError):
      run.run('gen', _config(points=7))
    with self.assertRaises(utils.BoundsError):
      run.run('gen', _config(chain=9))

  def test_check_on_files(self):
    text = spacefile.format_space(test_utils.mline())
    with test_utils.written(text) as path:
      out = run.run('check', _config(),
                    run.Options(paths=(path,), laws=True, theorems=True))
    self.assertTrue(out.all_passed, out.render())

  def test_check_on_random_spaces(self):
    out = run.run('check', _config(), run.Options(theorems=True))
    self.assertTrue(out.all_passed, out.render())

  def test_check_needs_a_suite(self):
    with self.assertRaises(ValueError):
      run.run('check', _config())

  def test_unknown_command(self):
    with self.assertRaises(ValueError):
      run.run('explode', _config())


class ConfigTest(absltest.TestCase):

  def test_defaults_are_locked(self):
    config = common.get_config()
    with self.assertRaises(AttributeError):
      config.unknown = 1
    self.assertIsNone(config.suite)

  def test_presets(self):
    config = suites.get_config('adhcont')
    self.assertEqual(config.suite, 'adhcont')
    self.assertEqual(config.chain, 4)
    with self.assertRaises(ValueError):
      suites.get_config('nope')

  def test_flatten(self):
    flat = dict(common.flatten(common.get_config()))
    self.assertEqual(flat['config.seed'], 0)


if __name__ == '__main__':
  absltest.main()
